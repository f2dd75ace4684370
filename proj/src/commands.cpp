#include "funnelkern/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"

#include "funnelkern/funnel.hpp"
#include "funnelkern/generator.hpp"
#include "funnelkern/io.hpp"
#include "funnelkern/kernelizer.hpp"
#include "funnelkern/solver.hpp"

namespace funnelkern {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct FileResult {
    std::string text;      // stdout payload (plain mode)
    std::string err_text;  // stderr payload
    ordered_json json;
    int code = 0;
};

int severity(int code) {
    switch (code) {
        case 2: return 3;
        case 3: return 2;
        case 1: return 1;
        default: return 0;
    }
}

int merge_codes(int a, int b) { return severity(a) >= severity(b) ? a : b; }

ParsedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_instance(in);
}

FadlInstance to_fadl(ParsedInstance&& p) {
    if (std::holds_alternative<FadlInstance>(p))
        return std::get<FadlInstance>(std::move(p));
    return from_fads(std::get<FadsInstance>(p));
}

FileResult failure(const std::string& name, const std::string& msg) {
    FileResult r;
    r.err_text = "error: " + msg + "\n";
    r.json = ordered_json{{"input", name}, {"error", msg}};
    r.code = 2;
    return r;
}

using FileFn = std::function<FileResult(const std::string&, const std::string&)>;

// Run `fn` over the input file, or over every file of an input directory,
// and write the merged outputs. Results are computed in bounded-width waves
// of worker threads but always emitted in name order.
int run_files(const CmdOptions& o, const FileFn& fn) {
    std::vector<std::pair<std::string, std::string>> inputs;  // path, name
    bool batch = fs::is_directory(o.input);
    if (batch) {
        for (const auto& e : fs::directory_iterator(o.input))
            if (e.is_regular_file())
                inputs.emplace_back(e.path().string(),
                                    e.path().filename().string());
        std::sort(inputs.begin(), inputs.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        if (inputs.empty()) {
            std::cerr << "error: no files in '" << o.input << "'\n";
            return 2;
        }
    } else {
        inputs.emplace_back(o.input, o.input);
    }

    std::vector<FileResult> results(inputs.size());
    std::size_t width =
        std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t base = 0; base < inputs.size(); base += width) {
        std::size_t end = std::min(inputs.size(), base + width);
        std::vector<std::future<FileResult>> futs;
        for (std::size_t i = base; i < end; ++i)
            futs.push_back(std::async(std::launch::async, fn,
                                      inputs[i].first, inputs[i].second));
        for (std::size_t i = base; i < end; ++i)
            results[i] = futs[i - base].get();
    }

    std::ostringstream outbuf, errbuf;
    if (o.json) {
        if (batch) {
            ordered_json arr = ordered_json::array();
            for (auto& r : results) arr.push_back(std::move(r.json));
            outbuf << arr.dump(2) << '\n';
        } else {
            outbuf << results[0].json.dump(2) << '\n';
        }
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (batch && !results[i].text.empty())
                outbuf << "== " << inputs[i].second << "\n";
            outbuf << results[i].text;
        }
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].err_text.empty()) continue;
        if (batch) errbuf << "== " << inputs[i].second << "\n";
        errbuf << results[i].err_text;
    }

    int code = 0;
    for (const auto& r : results) code = merge_codes(code, r.code);

    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) {
            std::cerr << "error: cannot write '" << o.output << "'\n";
            return 2;
        }
        f << outbuf.str();
    } else {
        std::cout << outbuf.str();
    }
    std::cerr << errbuf.str();
    return code;
}

FileResult recognize_one(const CmdOptions& o, const std::string& path,
                         const std::string& name) {
    try {
        ParsedInstance p = load_instance(path);
        const Digraph& g = std::holds_alternative<FadsInstance>(p)
                               ? std::get<FadsInstance>(p).graph
                               : std::get<FadlInstance>(p).graph;
        const Labeling* lab = std::holds_alternative<FadlInstance>(p)
                                  ? &std::get<FadlInstance>(p).labeling
                                  : nullptr;
        FileResult r;
        bool yes = is_funnel(g);
        r.code = yes ? 0 : 1;
        if (o.dot) {
            std::ostringstream s;
            emit_dot(s, g, lab);
            r.text = s.str();
            r.json = ordered_json{{"input", name}, {"dot", r.text}};
            return r;
        }
        std::ostringstream s;
        ordered_json j;
        j["input"] = name;
        j["funnel"] = yes;
        if (yes) {
            s << "funnel yes\n";
        } else {
            s << "funnel no\n";
            if (auto cyc = find_cycle(g)) {
                s << "cycle";
                ordered_json arr = ordered_json::array();
                for (VertexId v : *cyc) {
                    s << ' ' << v + 1;
                    arr.push_back(v + 1);
                }
                s << '\n';
                j["cycle"] = arr;
            } else {
                auto w = find_forbidden_witness(g);
                if (!w)
                    throw std::logic_error(
                        "acyclic non-funnel without a witness");
                s << "witness merge " << w->merge_vertex + 1 << " fork "
                  << w->fork_vertex + 1 << '\n';
                s << "path";
                ordered_json parr = ordered_json::array();
                for (VertexId v : w->path) {
                    s << ' ' << v + 1;
                    parr.push_back(v + 1);
                }
                s << '\n';
                s << "in " << w->in_pair[0] + 1 << ' ' << w->in_pair[1] + 1
                  << '\n';
                s << "out " << w->out_pair[0] + 1 << ' ' << w->out_pair[1] + 1
                  << '\n';
                j["witness"] = ordered_json{
                    {"merge", w->merge_vertex + 1},
                    {"fork", w->fork_vertex + 1},
                    {"path", parr},
                    {"in", {w->in_pair[0] + 1, w->in_pair[1] + 1}},
                    {"out", {w->out_pair[0] + 1, w->out_pair[1] + 1}}};
            }
        }
        r.text = s.str();
        r.json = std::move(j);
        return r;
    } catch (const ParseError& e) {
        return failure(name, e.what());
    } catch (const std::exception& e) {
        return failure(name, std::string("internal: ") + e.what());
    }
}

FileResult kernelize_one(const CmdOptions& o, const std::string& path,
                         const std::string& name) {
    try {
        ParsedInstance p = load_instance(path);
        FileResult r;
        ordered_json j;
        j["input"] = name;
        KernelOptions kopts;
        std::ostringstream kernel_text;
        KernelReport rep;
        if (std::holds_alternative<FadsInstance>(p)) {
            j["format"] = "fads";
            FadsKernelResult res =
                kernelize_fads(std::get<FadsInstance>(p), kopts);
            rep = std::move(res.report);
            emit_instance(kernel_text, res.kernel);
            j["n"] = res.kernel.graph.vertex_count();
            j["m"] = res.kernel.graph.arc_count();
            j["k"] = res.kernel.budget;
        } else {
            j["format"] = "fadl";
            rep = kernelize(std::get<FadlInstance>(p), kopts);
            FadlInstance kern = rep.trivial_no ? canonical_no_instance()
                                               : *rep.kernel;
            emit_instance(kernel_text, kern);
            j["n"] = kern.graph.vertex_count();
            j["m"] = kern.graph.arc_count();
            j["k"] = kern.budget;
        }
        j["trivial_no"] = rep.trivial_no;
        ordered_json rules;
        for (int i = 1; i <= 8; ++i)
            rules[std::to_string(i)] = rep.rule_counts[i];
        j["rules"] = std::move(rules);
        j["shift_steps"] = rep.shift_steps;
        j["rescan_finds"] = rep.rescan_finds;
        if (o.audit && rep.audit) {
            ordered_json checks = ordered_json::array();
            std::ostringstream es;
            for (const AuditCheck& c : rep.audit->checks) {
                checks.push_back(ordered_json{{"name", c.name},
                                              {"limit", c.limit},
                                              {"observed", c.observed},
                                              {"pass", c.pass}});
                es << "audit " << c.name << " observed " << c.observed
                   << " limit " << c.limit << (c.pass ? " ok" : " FAIL")
                   << '\n';
            }
            j["audit"] = std::move(checks);
            r.err_text = es.str();
        }
        j["kernel"] = kernel_text.str();
        r.text = kernel_text.str();
        r.json = std::move(j);
        r.code = rep.trivial_no ? 1 : 0;
        return r;
    } catch (const ParseError& e) {
        return failure(name, e.what());
    } catch (const std::exception& e) {
        return failure(name, std::string("internal: ") + e.what());
    }
}

FileResult solve_one(const CmdOptions& o, const std::string& path,
                     const std::string& name) {
    try {
        FadlInstance inst = to_fadl(load_instance(path));
        SolveOptions sopts;
        sopts.optimize = o.optimize;
        sopts.node_budget = o.node_budget;
        SolveResult res;
        if (o.engine == "brute")
            res = solve_bruteforce(inst, sopts);
        else if (o.engine == "labelings")
            res = solve_labelings(inst, sopts);
        else if (o.engine == "bnb")
            res = solve_branch_and_bound(inst, sopts);
        else
            return failure(name, "unknown engine '" + o.engine + "'");

        SolutionFile sf;
        sf.status = res.status;
        if (res.solution) {
            sf.deleted_arcs = res.solution->deleted_arcs;
            for (VertexId v : inst.graph.vertices())
                if (auto l = res.solution->labeling.get(v))
                    sf.labels.emplace_back(v, *l);
        }
        std::ostringstream s;
        if (res.optimum) s << "c optimum " << *res.optimum << '\n';
        emit_solution(s, sf);

        ordered_json j;
        j["input"] = name;
        j["engine"] = o.engine;
        j["status"] = res.status == SolveStatus::yes
                          ? "yes"
                          : res.status == SolveStatus::no ? "no" : "unknown";
        if (res.optimum) j["optimum"] = *res.optimum;
        if (res.solution) {
            ordered_json del = ordered_json::array();
            std::vector<Arc> sorted = sf.deleted_arcs;
            std::sort(sorted.begin(), sorted.end());
            for (const Arc& a : sorted)
                del.push_back({a.tail + 1, a.head + 1});
            j["deleted"] = std::move(del);
            ordered_json labs;
            for (auto& [v, l] : sf.labels)
                labs[std::to_string(v + 1)] =
                    l == Label::fork ? "F" : "M";
            j["labels"] = std::move(labs);
        }

        FileResult r;
        r.text = s.str();
        r.json = std::move(j);
        r.code = res.status == SolveStatus::yes
                     ? 0
                     : res.status == SolveStatus::no ? 1 : 3;
        return r;
    } catch (const ParseError& e) {
        return failure(name, e.what());
    } catch (const std::exception& e) {
        return failure(name, std::string("internal: ") + e.what());
    }
}

int write_or_print(const CmdOptions& o, const std::string& text) {
    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) {
            std::cerr << "error: cannot write '" << o.output << "'\n";
            return 2;
        }
        f << text;
        return 0;
    }
    std::cout << text;
    return 0;
}

}  // namespace

int cmd_recognize(const CmdOptions& o) {
    return run_files(o, [&o](const std::string& p, const std::string& n) {
        return recognize_one(o, p, n);
    });
}

int cmd_kernelize(const CmdOptions& o) {
    return run_files(o, [&o](const std::string& p, const std::string& n) {
        return kernelize_one(o, p, n);
    });
}

int cmd_solve(const CmdOptions& o) {
    return run_files(o, [&o](const std::string& p, const std::string& n) {
        return solve_one(o, p, n);
    });
}

int cmd_verify(const CmdOptions& o) {
    try {
        FadlInstance inst = to_fadl(load_instance(o.input));
        std::ifstream sin(o.solution);
        if (!sin) {
            std::cerr << "error: cannot open '" << o.solution << "'\n";
            return 2;
        }
        SolutionFile sf = parse_solution(sin, inst.graph.capacity());

        std::string claim = sf.status == SolveStatus::yes
                                ? "yes"
                                : sf.status == SolveStatus::no ? "no"
                                                               : "unknown";
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

        std::ostringstream s;
        if (!checked)
            s << "no certificate to check (claim " << claim << ")\n";
        else if (valid)
            s << "valid\n";
        else
            s << "invalid: " << reason << '\n';
        if (o.json) {
            ordered_json j;
            j["instance"] = o.input;
            j["solution"] = o.solution;
            j["claim"] = claim;
            j["checked"] = checked;
            j["valid"] = valid;
            if (!valid) j["reason"] = reason;
            std::ostringstream js;
            js << j.dump(2) << '\n';
            int rc = write_or_print(o, js.str());
            if (rc != 0) return rc;
        } else {
            int rc = write_or_print(o, s.str());
            if (rc != 0) return rc;
        }
        return checked && !valid ? 1 : 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 2;
    }
}

int cmd_gen(const CmdOptions& o) {
    try {
        SplitMix64 rng(o.seed);
        std::ostringstream text;
        std::string cert_text;
        if (o.family == "forbidden") {
            if (o.k < 0 || o.k > 1'000'000)
                throw std::invalid_argument("path length out of range");
            Digraph g = gen_forbidden(static_cast<int>(o.k));
            emit_instance(text, FadsInstance{std::move(g), 1});
        } else if (o.family == "random") {
            Digraph g = gen_random_digraph(o.n, o.m, rng);
            emit_instance(text, FadsInstance{std::move(g), o.k});
        } else if (o.family == "planted") {
            if (o.k < 0 || o.k > std::numeric_limits<int>::max())
                throw std::invalid_argument("plant count out of range");
            PlantedInstance p = gen_planted(o.n, o.m, static_cast<int>(o.k),
                                            o.fork_fraction, rng);
            emit_instance(text, p.instance);
            SolutionFile sf;
            sf.status = SolveStatus::yes;
            sf.deleted_arcs = p.noise_arcs;
            for (VertexId v : p.instance.graph.vertices())
                if (auto l = p.clean_labeling.get(v))
                    sf.labels.emplace_back(v, *l);
            std::ostringstream cs;
            emit_solution(cs, sf);
            cert_text = cs.str();
            if (o.output.empty()) {
                std::cerr << "error: planted generation needs -o so the "
                             "certificate sidecar has somewhere to go\n";
                return 2;
            }
        } else {
            std::cerr << "error: unknown family '" << o.family << "'\n";
            return 2;
        }
        int rc = write_or_print(o, text.str());
        if (rc != 0) return rc;
        if (!cert_text.empty()) {
            std::ofstream cf(o.output + ".cert");
            if (!cf) {
                std::cerr << "error: cannot write '" << o.output
                          << ".cert'\n";
                return 2;
            }
            cf << cert_text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace funnelkern
