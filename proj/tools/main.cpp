#include "CLI11.hpp"

#include "funnelkern/commands.hpp"

int main(int argc, char** argv) {
    funnelkern::CmdOptions o;
    CLI::App app{"funnel arc deletion toolkit"};
    app.require_subcommand(1);

    auto* rec = app.add_subcommand(
        "recognize", "check whether a digraph is a funnel");
    rec->add_option("input", o.input, "instance file or directory")
        ->required();
    rec->add_flag("--json", o.json, "machine readable output");
    rec->add_flag("--dot", o.dot, "emit graphviz instead of a verdict");
    rec->add_option("-o,--output", o.output, "write output here");

    auto* ker =
        app.add_subcommand("kernelize", "reduce an instance to its kernel");
    ker->add_option("input", o.input, "instance file or directory")
        ->required();
    ker->add_flag("--json", o.json, "machine readable output");
    ker->add_flag("--audit", o.audit, "report the kernel size bounds");
    ker->add_option("-o,--output", o.output, "write the kernel here");

    auto* sol = app.add_subcommand("solve", "decide or optimize an instance");
    sol->add_option("input", o.input, "instance file or directory")
        ->required();
    sol->add_option("--engine", o.engine, "brute, labelings or bnb")
        ->check(CLI::IsMember({"brute", "labelings", "bnb"}));
    sol->add_flag("--optimize", o.optimize,
                  "report the optimum instead of a budget decision");
    sol->add_option("--node-budget", o.node_budget,
                    "search node limit for bnb");
    sol->add_flag("--json", o.json, "machine readable output");
    sol->add_option("-o,--output", o.output, "write the solution here");

    auto* ver = app.add_subcommand("verify", "check a solution file");
    ver->add_option("instance", o.input, "instance file")->required();
    ver->add_option("solution", o.solution, "solution file")->required();
    ver->add_flag("--json", o.json, "machine readable output");
    ver->add_option("-o,--output", o.output, "write the verdict here");

    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("--family", o.family, "random, planted or forbidden")
        ->check(CLI::IsMember({"random", "planted", "forbidden"}));
    gen->add_option("--n", o.n, "vertex count");
    gen->add_option("--m", o.m, "arc count target");
    gen->add_option("--k", o.k, "budget (planted: arcs planted on top)");
    gen->add_option("--fork-fraction", o.fork_fraction,
                    "share of fork vertices in generated funnels");
    gen->add_option("--seed", o.seed, "random seed");
    gen->add_option("-o,--output", o.output,
                    "write the instance here (planted also writes .cert)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (app.got_subcommand(rec)) return funnelkern::cmd_recognize(o);
    if (app.got_subcommand(ker)) return funnelkern::cmd_kernelize(o);
    if (app.got_subcommand(sol)) return funnelkern::cmd_solve(o);
    if (app.got_subcommand(ver)) return funnelkern::cmd_verify(o);
    if (app.got_subcommand(gen)) return funnelkern::cmd_gen(o);
    return 2;
}
