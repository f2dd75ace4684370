// Python face of the library. Instances travel as the same text format the
// CLI reads; structured results come back as plain dicts. Vertex ids in
// returned structures are 0-based.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "funnelkern/funnel.hpp"
#include "funnelkern/generator.hpp"
#include "funnelkern/instance.hpp"
#include "funnelkern/io.hpp"
#include "funnelkern/kernelizer.hpp"
#include "funnelkern/solver.hpp"

namespace py = pybind11;
using namespace funnelkern;

namespace {

ParsedInstance parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

FadlInstance lift(ParsedInstance p) {
    if (std::holds_alternative<FadsInstance>(p))
        return from_fads(std::get<FadsInstance>(p));
    return std::move(std::get<FadlInstance>(p));
}

bool is_funnel_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<Arc> as;
    as.reserve(arcs.size());
    for (auto [u, v] : arcs) as.push_back({u, v});
    return is_funnel(build_digraph(n, as).graph);
}

py::dict py_recognize(const std::string& text) {
    ParsedInstance p = parse_text(text);
    const Digraph& g = std::holds_alternative<FadsInstance>(p)
                           ? std::get<FadsInstance>(p).graph
                           : std::get<FadlInstance>(p).graph;
    py::dict d;
    bool yes = is_funnel(g);
    d["funnel"] = yes;
    if (!yes) {
        if (auto cyc = find_cycle(g)) {
            d["cycle"] = py::cast(*cyc);
        } else if (auto w = find_forbidden_witness(g)) {
            py::dict wd;
            wd["merge"] = w->merge_vertex;
            wd["fork"] = w->fork_vertex;
            wd["path"] = py::cast(w->path);
            wd["in_pair"] = py::make_tuple(w->in_pair[0], w->in_pair[1]);
            wd["out_pair"] = py::make_tuple(w->out_pair[0], w->out_pair[1]);
            d["witness"] = wd;
        }
    }
    return d;
}

py::dict py_kernelize(const std::string& text) {
    ParsedInstance p = parse_text(text);
    py::dict d;
    std::ostringstream kernel_text;
    KernelReport rep;
    if (std::holds_alternative<FadsInstance>(p)) {
        d["format"] = "fads";
        FadsKernelResult res = kernelize_fads(std::get<FadsInstance>(p));
        rep = std::move(res.report);
        emit_instance(kernel_text, res.kernel);
        d["n"] = res.kernel.graph.vertex_count();
        d["m"] = res.kernel.graph.arc_count();
        d["k"] = res.kernel.budget;
    } else {
        d["format"] = "fadl";
        rep = kernelize(std::get<FadlInstance>(p));
        FadlInstance kern =
            rep.trivial_no ? canonical_no_instance() : *rep.kernel;
        emit_instance(kernel_text, kern);
        d["n"] = kern.graph.vertex_count();
        d["m"] = kern.graph.arc_count();
        d["k"] = kern.budget;
    }
    d["trivial_no"] = rep.trivial_no;
    py::dict rules;
    for (int i = 1; i <= 8; ++i)
        rules[py::int_(i)] = rep.rule_counts[i];
    d["rules"] = rules;
    d["shift_steps"] = rep.shift_steps;
    d["rescan_finds"] = rep.rescan_finds;
    if (rep.audit) {
        py::list checks;
        for (const AuditCheck& c : rep.audit->checks) {
            py::dict cd;
            cd["name"] = c.name;
            cd["limit"] = c.limit;
            cd["observed"] = c.observed;
            cd["pass"] = c.pass;
            checks.append(cd);
        }
        d["audit"] = checks;
    }
    d["kernel"] = kernel_text.str();
    return d;
}

py::dict py_solve(const std::string& text, const std::string& engine,
                  bool optimize, std::uint64_t node_budget) {
    FadlInstance inst = lift(parse_text(text));
    SolveOptions opts;
    opts.optimize = optimize;
    opts.node_budget = node_budget;
    SolveResult res;
    if (engine == "brute")
        res = solve_bruteforce(inst, opts);
    else if (engine == "labelings")
        res = solve_labelings(inst, opts);
    else if (engine == "bnb")
        res = solve_branch_and_bound(inst, opts);
    else
        throw std::invalid_argument("unknown engine '" + engine + "'");

    py::dict d;
    d["status"] = res.status == SolveStatus::yes
                      ? "yes"
                      : res.status == SolveStatus::no ? "no" : "unknown";
    if (res.optimum)
        d["optimum"] = *res.optimum;
    else
        d["optimum"] = py::none();

    SolutionFile sf;
    sf.status = res.status;
    if (res.solution) {
        sf.deleted_arcs = res.solution->deleted_arcs;
        py::list deleted;
        py::dict labels;
        for (const Arc& a : res.solution->deleted_arcs)
            deleted.append(py::make_tuple(a.tail, a.head));
        for (VertexId v : inst.graph.vertices())
            if (auto l = res.solution->labeling.get(v)) {
                labels[py::int_(v)] = *l == Label::fork ? "F" : "M";
                sf.labels.emplace_back(v, *l);
            }
        d["deleted"] = deleted;
        d["labels"] = labels;
    }
    std::ostringstream s;
    if (optimize && res.optimum) s << "c optimum " << *res.optimum << '\n';
    emit_solution(s, sf);
    d["text"] = s.str();
    return d;
}

py::dict py_verify(const std::string& instance_text,
                   const std::string& solution_text) {
    FadlInstance inst = lift(parse_text(instance_text));
    std::istringstream sin(solution_text);
    SolutionFile sf = parse_solution(sin, inst.graph.capacity());

    py::dict d;
    d["claim"] = sf.status == SolveStatus::yes
                     ? "yes"
                     : sf.status == SolveStatus::no ? "no" : "unknown";
    bool checked = false;
    bool valid = true;
    std::string reason;
    if (sf.status == SolveStatus::yes) {
        Solution sol;
        sol.deleted_arcs = sf.deleted_arcs;
        sol.labeling = Labeling(inst.graph.capacity());
        for (auto& [v, l] : sf.labels) sol.labeling.set(v, l);
        valid = verify_solution(inst, sol, &reason);
        checked = true;
    }
    d["checked"] = checked;
    d["valid"] = valid;
    d["reason"] = reason;
    return d;
}

std::string py_gen_forbidden(int k) {
    std::ostringstream s;
    emit_instance(s, FadsInstance{gen_forbidden(k), 1});
    return s.str();
}

std::string py_gen_random(int n, std::int64_t m, std::int64_t k,
                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::ostringstream s;
    emit_instance(s, FadsInstance{gen_random_digraph(n, m, rng), k});
    return s.str();
}

py::tuple py_gen_planted(int n, std::int64_t m, int k, std::uint64_t seed,
                         double fork_fraction) {
    SplitMix64 rng(seed);
    PlantedInstance p = gen_planted(n, m, k, fork_fraction, rng);
    std::ostringstream inst;
    emit_instance(inst, p.instance);
    SolutionFile sf;
    sf.status = SolveStatus::yes;
    sf.deleted_arcs = p.noise_arcs;
    for (VertexId v : p.instance.graph.vertices())
        if (auto l = p.clean_labeling.get(v)) sf.labels.emplace_back(v, *l);
    std::ostringstream cert;
    emit_solution(cert, sf);
    return py::make_tuple(inst.str(), cert.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "funnel arc deletion toolkit";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("is_funnel", &is_funnel_arcs, py::arg("n"), py::arg("arcs"),
          "Whether the digraph on n vertices with the given 0-based arc "
          "list is a funnel.");
    m.def("recognize", &py_recognize, py::arg("text"),
          "Recognize the instance text; returns funnel flag plus a cycle or "
          "an obstruction witness when it is not a funnel.");
    m.def("kernelize", &py_kernelize, py::arg("text"),
          "Reduce the instance text; returns kernel text, rule counts and "
          "size audit.");
    m.def("solve", &py_solve, py::arg("text"), py::arg("engine") = "bnb",
          py::arg("optimize") = false,
          py::arg("node_budget") = std::uint64_t{1'000'000},
          "Solve the instance text with one of the engines brute, labelings "
          "or bnb.");
    m.def("verify", &py_verify, py::arg("instance_text"),
          py::arg("solution_text"),
          "Check a solution file against an instance.");
    m.def("gen_forbidden", &py_gen_forbidden, py::arg("k"),
          "Instance text of the stretched obstruction with a path of k "
          "inner arcs.");
    m.def("gen_random", &py_gen_random, py::arg("n"), py::arg("m"),
          py::arg("k"), py::arg("seed"),
          "Instance text of a random digraph with m arcs and budget k.");
    m.def("gen_planted", &py_gen_planted, py::arg("n"), py::arg("m"),
          py::arg("k"), py::arg("seed"), py::arg("fork_fraction") = 0.5,
          "Pair of instance text and solution text for a funnel with k "
          "planted noise arcs.");
}
