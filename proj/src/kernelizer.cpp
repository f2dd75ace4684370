#include "funnelkern/kernelizer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace funnelkern {

namespace {

// per-vertex term of the degree excess bound
std::int64_t vertex_excess(const FadlInstance& inst, VertexId v) {
    int in = inst.graph.in_degree(v);
    int out = inst.graph.out_degree(v);
    auto l = inst.labeling.get(v);
    if (l == Label::merge) return out > 1 ? out - 1 : 0;
    if (l == Label::fork) return in > 1 ? in - 1 : 0;
    if (in > 1 && out > 1) return std::min(in, out) - 1;
    return 0;
}

// Worklist driver. Rules mutate the shared instance and report traces;
// replaying a trace pushes every vertex whose rule preconditions could have
// flipped. Degrees never grow during a run because rules 3 and 5 pair each
// added arc with a removed arc at the same endpoint, so each vertex crosses
// each small-degree threshold at most once and the neighborhood pushes stay
// near linear in total.
//
// Vertex deletions (rule 8) are only attempted once a full scan has verified
// that no earlier rule applies anywhere; afterwards the event pushes keep
// that invariant. Closing full scans re-verify the fixed point from scratch,
// and `rescan_finds` records any site they catch that the queues missed.
struct Driver {
    FadlInstance inst;
    const KernelOptions& opts;
    KernelReport rep;

    std::int64_t shift_cap = 0;
    bool refuted = false;
    bool certified = false;  // rules 1..7 exhausted everywhere

    std::vector<std::int64_t> excess;
    std::int64_t excess_sum = 0;

    std::deque<VertexId> q2, q3, q5, q6, q8;
    std::deque<Arc> q7;
    std::vector<char> in2, in3, in5, in6, in8;

    // unlabeled vertices keyed by current degree; walked from the top when
    // the budget drops and the degree cap of rule 2 tightens
    std::set<std::pair<int, VertexId>> by_out, by_in;
    std::vector<int> key_out, key_in;
    std::vector<char> in_sets;

    std::vector<int> walk_mark;
    int walk_stamp = 0;

    std::vector<VertexId> touched;

    Driver(const FadlInstance& start, const KernelOptions& o)
        : inst(start), opts(o) {
        const Digraph& g = inst.graph;
        int cap = g.capacity();
        excess.assign(cap, 0);
        in2.assign(cap, 0);
        in3.assign(cap, 0);
        in5.assign(cap, 0);
        in6.assign(cap, 0);
        in8.assign(cap, 0);
        key_out.assign(cap, 0);
        key_in.assign(cap, 0);
        in_sets.assign(cap, 0);
        walk_mark.assign(cap, 0);

        std::int64_t n = g.vertex_count();
        std::int64_t m = g.arc_count();
        shift_cap = o.max_shift_steps > 0 ? o.max_shift_steps
                                          : 2 * (n + 2) * (m + 2) + 1000;

        for (VertexId v : g.vertices()) {
            excess[v] = vertex_excess(inst, v);
            excess_sum += excess[v];
            if (!inst.labeling.is_labeled(v)) {
                key_out[v] = g.out_degree(v);
                key_in[v] = g.in_degree(v);
                by_out.insert({key_out[v], v});
                by_in.insert({key_in[v], v});
                in_sets[v] = 1;
            }
            push_all(v);
        }
        for (const Arc& a : g.arcs()) {
            auto lt = inst.labeling.get(a.tail);
            auto lh = inst.labeling.get(a.head);
            if (lt && lh && lt != lh) q7.push_back(a);
        }
        check_refuted();
    }

    void push2(VertexId v) {
        if (!in2[v]) {
            in2[v] = 1;
            q2.push_back(v);
        }
    }
    void push3(VertexId v) {
        if (!in3[v]) {
            in3[v] = 1;
            q3.push_back(v);
        }
    }
    void push5(VertexId v) {
        if (!in5[v]) {
            in5[v] = 1;
            q5.push_back(v);
        }
    }
    void push6(VertexId v) {
        if (!in6[v]) {
            in6[v] = 1;
            q6.push_back(v);
        }
    }
    void push8(VertexId v) {
        if (!in8[v]) {
            in8[v] = 1;
            q8.push_back(v);
        }
    }
    void push_all(VertexId v) {
        push2(v);
        push3(v);
        push5(v);
        push6(v);
        push8(v);
    }
    void push_hood(VertexId v) {
        for (VertexId u : inst.graph.in_neighbors(v)) push_all(u);
        for (VertexId u : inst.graph.out_neighbors(v)) push_all(u);
    }

    void check_refuted() {
        if (refuted) return;
        if (inst.budget < 0 || excess_sum > 2 * inst.budget) {
            refuted = true;
            ++rep.rule_counts[1];
        }
    }

    void bump_shift() {
        if (++rep.shift_steps > shift_cap)
            throw std::logic_error(
                "arc shift budget exhausted; reduction is not converging");
    }

    void touch(VertexId v) { touched.push_back(v); }

    // Push everything a mutation could have enabled. Queries run against the
    // post-mutation state; degrees never grow, so a threshold of interest is
    // always visible as a small current degree.
    void replay(const RuleTrace& tr) {
        ++rep.rule_counts[tr.rule];
        if (opts.on_step) opts.on_step(inst, tr);
        const Digraph& g = inst.graph;
        const Labeling& l = inst.labeling;
        touched.clear();

        for (const Arc& a : tr.arcs_removed) {
            touch(a.tail);
            touch(a.head);
            if (g.is_live(a.tail)) {
                push_all(a.tail);
                if (g.out_degree(a.tail) <= 2) push_hood(a.tail);
                // freed shift target: a stray in-arc of some unit-out-degree
                // vertex below a.tail can now move onto a.tail's spot
                for (VertexId c : g.out_neighbors(a.tail))
                    if (g.out_degree(c) == 1 && l.get(c) != Label::fork)
                        push5(c);
            }
            if (g.is_live(a.head)) {
                push_all(a.head);
                if (g.in_degree(a.head) <= 2) push_hood(a.head);
                for (VertexId c : g.in_neighbors(a.head))
                    if (g.in_degree(c) == 1 && l.get(c) != Label::merge)
                        push5(c);
            }
        }
        for (const Arc& a : tr.arcs_added) {
            touch(a.tail);
            touch(a.head);
            push_all(a.tail);
            push_all(a.head);
            auto lt = l.get(a.tail);
            auto lh = l.get(a.head);
            if (lt && lh && lt != lh) q7.push_back(a);
        }
        for (const auto& [v, lab] : tr.labels_set) {
            touch(v);
            push_all(v);
            for (VertexId u : g.out_neighbors(v)) {
                push_all(u);
                auto lu = l.get(u);
                if (lu && lu != lab) q7.push_back({v, u});
            }
            for (VertexId u : g.in_neighbors(v)) {
                push_all(u);
                auto lu = l.get(u);
                if (lu && lu != lab) q7.push_back({u, v});
            }
        }
        for (VertexId v : tr.vertices_removed) touch(v);

        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()),
                      touched.end());
        for (VertexId v : touched) {
            std::int64_t ex = g.is_live(v) ? vertex_excess(inst, v) : 0;
            excess_sum += ex - excess[v];
            excess[v] = ex;
            if (in_sets[v]) {
                by_out.erase({key_out[v], v});
                by_in.erase({key_in[v], v});
                in_sets[v] = 0;
            }
            if (g.is_live(v) && !l.is_labeled(v)) {
                key_out[v] = g.out_degree(v);
                key_in[v] = g.in_degree(v);
                by_out.insert({key_out[v], v});
                by_in.insert({key_in[v], v});
                in_sets[v] = 1;
            }
        }

        if (tr.budget_delta != 0) {
            check_refuted();
            if (!refuted) {
                for (auto it = by_out.rbegin();
                     it != by_out.rend() && it->first > inst.budget + 1; ++it)
                    push2(it->second);
                for (auto it = by_in.rbegin();
                     it != by_in.rend() && it->first > inst.budget + 1; ++it)
                    push2(it->second);
            }
        }
        check_refuted();
    }

    void maybe_apply(RuleOutcome&& o) {
        if (o.kind == RuleKind::changed) replay(o.trace);
    }

    // Rule 6 sites touching z, in all four roles of the arc (v,u).
    void process_label_transfer(VertexId z) {
        Digraph& g = inst.graph;
        const Labeling& l = inst.labeling;
        if (!g.is_live(z) || l.is_labeled(z)) return;

        if (g.in_degree(z) == 1) {
            bool witness = false;
            for (VertexId w : g.out_neighbors(z))
                if (l.get(w) == Label::merge) witness = true;
            if (witness) {
                auto snap = g.out_neighbors(z);
                for (VertexId u : snap) {
                    if (refuted) return;
                    if (!g.is_live(u) || l.is_labeled(u)) continue;
                    if (!g.has_arc(z, u) || g.in_degree(u) != 1) continue;
                    maybe_apply(rule_labeled_neighbor(inst, z, u));
                }
            }
        }
        if (refuted || !g.is_live(z) || l.is_labeled(z)) return;
        if (g.out_degree(z) == 1) {
            bool witness = false;
            for (VertexId w : g.in_neighbors(z))
                if (l.get(w) == Label::fork) witness = true;
            if (witness) {
                auto snap = g.in_neighbors(z);
                for (VertexId v : snap) {
                    if (refuted || l.is_labeled(z)) return;
                    if (!g.is_live(v) || l.is_labeled(v)) continue;
                    if (!g.has_arc(v, z) || g.out_degree(v) != 1) continue;
                    maybe_apply(rule_labeled_neighbor(inst, v, z));
                }
            }
        }
        // z on the receiving end, with the witness sitting one hop away
        if (refuted || !g.is_live(z) || l.is_labeled(z)) return;
        if (g.in_degree(z) == 1) {
            VertexId p = g.in_neighbors(z)[0];
            if (!l.is_labeled(p) && g.in_degree(p) == 1)
                maybe_apply(rule_labeled_neighbor(inst, p, z));
        }
        if (refuted || !g.is_live(z) || l.is_labeled(z)) return;
        if (g.out_degree(z) == 1) {
            VertexId c = g.out_neighbors(z)[0];
            if (!l.is_labeled(c) && g.out_degree(c) == 1)
                maybe_apply(rule_labeled_neighbor(inst, z, c));
        }
    }

    // Walk the unit-degree chain through s and push stray neighbors along it,
    // one arc at a time, sweeping from s toward the chain's far end so a
    // moved arc keeps riding in the same pass. A walk that bites its own tail
    // is a cycle: break it if its labels allow, otherwise hand the vertices
    // to the labeling queue and retry once the cascade has run.
    void process_chain(VertexId s, bool in_case) {
        const Digraph& g = inst.graph;
        const Labeling& l = inst.labeling;
        auto in_chain = [&](VertexId v) {
            if (!g.is_live(v)) return false;
            if (in_case)
                return g.in_degree(v) == 1 && l.get(v) != Label::merge;
            return g.out_degree(v) == 1 && l.get(v) != Label::fork;
        };
        if (!in_chain(s)) return;

        ++walk_stamp;
        std::vector<VertexId> path;
        VertexId v = s;
        while (true) {
            if (walk_mark[v] == walk_stamp) {
                std::size_t j = 0;
                while (path[j] != v) ++j;
                std::vector<VertexId> cyc(path.begin() + j, path.end());
                if (in_case) std::reverse(cyc.begin(), cyc.end());
                RuleOutcome o = rule_break_cycle(inst, cyc);
                if (o.kind == RuleKind::changed) {
                    replay(o.trace);
                } else {
                    // mixed labels; a forced label inside the cycle will fire
                    for (VertexId c : cyc) push2(c);
                }
                push5(s);
                return;
            }
            walk_mark[v] = walk_stamp;
            path.push_back(v);
            VertexId next =
                in_case ? g.in_neighbors(v)[0] : g.out_neighbors(v)[0];
            if (!in_chain(next)) break;
            v = next;
        }

        for (std::size_t i = 0; i + 1 < path.size() && !refuted; ++i) {
            VertexId a = path[i];
            VertexId b = path[i + 1];
            bool more = true;
            while (more && !refuted) {
                more = false;
                if (!g.is_live(a) || !g.is_live(b)) break;
                auto snap = in_case ? g.out_neighbors(a) : g.in_neighbors(a);
                for (VertexId t : snap) {
                    if (!g.is_live(t)) continue;
                    RuleOutcome o;
                    if (in_case) {
                        if (g.in_degree(t) != 1) continue;
                        o = rule_shift_neighbors(inst, b, a, t);
                    } else {
                        if (g.out_degree(t) != 1) continue;
                        o = rule_shift_neighbors(inst, t, a, b);
                    }
                    if (o.kind == RuleKind::changed) {
                        bump_shift();
                        replay(o.trace);
                        more = true;
                        break;
                    }
                }
            }
        }
    }

    void process_seed(VertexId s) {
        if (refuted || !inst.graph.is_live(s)) return;
        process_chain(s, true);
        if (refuted || !inst.graph.is_live(s)) return;
        process_chain(s, false);
    }

    // Apply a site the closing scan produced; these bypass the queues.
    void apply_scanned(const ApplicableSite& site) {
        ++rep.rescan_finds;
        RuleOutcome o = apply_rule_at(inst, site);
        if (o.kind == RuleKind::changed) {
            replay(o.trace);
        } else if (o.kind == RuleKind::trivial_no) {
            refuted = true;
            ++rep.rule_counts[1];
        } else {
            throw std::logic_error("scan reported an inapplicable site");
        }
    }

    void run() {
        while (!refuted) {
            if (!q2.empty()) {
                VertexId v = q2.front();
                q2.pop_front();
                in2[v] = 0;
                if (inst.graph.is_live(v) && !inst.labeling.is_labeled(v))
                    maybe_apply(rule_set_label(inst, v));
                continue;
            }
            if (!q3.empty()) {
                VertexId v = q3.front();
                q3.pop_front();
                in3[v] = 0;
                if (inst.graph.is_live(v)) maybe_apply(rule_dissolve(inst, v));
                continue;
            }
            if (!q5.empty()) {
                VertexId v = q5.front();
                q5.pop_front();
                in5[v] = 0;
                process_seed(v);
                continue;
            }
            if (!q6.empty()) {
                VertexId v = q6.front();
                q6.pop_front();
                in6[v] = 0;
                process_label_transfer(v);
                continue;
            }
            if (!q7.empty()) {
                Arc a = q7.front();
                q7.pop_front();
                const Digraph& g = inst.graph;
                if (g.is_live(a.tail) && g.is_live(a.head) &&
                    g.has_arc(a.tail, a.head) &&
                    inst.labeling.is_labeled(a.tail) &&
                    inst.labeling.is_labeled(a.head))
                    maybe_apply(rule_remove_arcs(inst, a.tail, a.head));
                continue;
            }
            if (!certified) {
                if (auto site = find_applicable_rule(inst, 7)) {
                    apply_scanned(*site);
                    continue;
                }
                certified = true;
            }
            if (!q8.empty()) {
                if (opts.paranoid_rescan) {
                    if (auto site = find_applicable_rule(inst, 7)) {
                        certified = false;
                        apply_scanned(*site);
                        continue;
                    }
                }
                VertexId v = q8.front();
                q8.pop_front();
                in8[v] = 0;
                if (inst.graph.is_live(v))
                    maybe_apply(rule_remove_sinks(inst, v));
                continue;
            }
            auto site = find_applicable_rule(inst, 8);
            if (!site) break;
            if (site->rule <= 7) certified = false;
            apply_scanned(*site);
        }
    }
};

}  // namespace

bool SizeAudit::all_pass() const {
    for (const AuditCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

SizeAudit size_audit(const FadlInstance& inst) {
    if (find_applicable_rule(inst))
        throw std::invalid_argument(
            "size audit requires a fully reduced instance");
    const Digraph& g = inst.graph;
    SizeAudit a;
    a.n = g.vertex_count();
    a.m = g.arc_count();
    a.k = inst.budget;
    std::int64_t max_unlabeled_degree = 0;
    std::int64_t boundary = 0;
    for (VertexId v : g.vertices()) {
        int in = g.in_degree(v);
        int out = g.out_degree(v);
        if (in > 1 && out > 1) ++a.both_degree_big;
        if (inst.labeling.is_labeled(v)) {
            ++a.labeled_count;
        } else {
            ++a.unlabeled_count;
            max_unlabeled_degree =
                std::max<std::int64_t>(max_unlabeled_degree, std::max(in, out));
            if (std::min(in, out) <= 1) ++boundary;
        }
    }
    std::int64_t k = a.k;
    // the polynomial overflows 64 bits for very large budgets; the bound is
    // vacuous there anyway
    std::int64_t boundary_limit =
        k >= 4000 ? std::numeric_limits<std::int64_t>::max()
                  : (5 * k * k + 5 * k) * (k * k * k + 3 * k * k + 2 * k);
    a.checks.push_back({"both_degree_big", 2 * k, a.both_degree_big,
                        a.both_degree_big <= 2 * k});
    a.checks.push_back({"unlabeled_degree", k + 1, max_unlabeled_degree,
                        max_unlabeled_degree <= k + 1});
    a.checks.push_back(
        {"unlabeled_boundary", boundary_limit, boundary,
         boundary <= boundary_limit});
    return a;
}

std::int64_t KernelReport::applied_total() const {
    std::int64_t sum = 0;
    for (std::int64_t c : rule_counts) sum += c;
    return sum;
}

KernelReport kernelize(const FadlInstance& start, const KernelOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Driver d(start, opts);
    d.run();
    KernelReport rep = std::move(d.rep);
    if (d.refuted) {
        rep.trivial_no = true;
    } else {
        if (d.excess_sum != lower_bound_excess(d.inst))
            throw std::logic_error("degree excess bookkeeping diverged");
        if (opts.collect_audit) rep.audit = size_audit(d.inst);
        rep.kernel = std::move(d.inst);
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

FadlInstance canonical_no_instance() {
    Digraph g(5);
    g.add_arc(1, 0);
    g.add_arc(2, 0);
    g.add_arc(0, 3);
    g.add_arc(0, 4);
    FadlInstance inst;
    inst.graph = std::move(g);
    inst.labeling = Labeling(5);
    inst.budget = 0;
    return inst;
}

FadsKernelResult kernelize_fads(const FadsInstance& inst,
                                const KernelOptions& opts) {
    KernelReport rep = kernelize(from_fads(inst), opts);
    FadsKernelResult res;
    if (rep.trivial_no) {
        FadlInstance canon = canonical_no_instance();
        res.kernel = FadsInstance{std::move(canon.graph), canon.budget};
    } else {
        res.kernel = to_fads(*rep.kernel);
    }
    res.report = std::move(rep);
    return res;
}

}  // namespace funnelkern
