#include "funnelkern/rules.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace funnelkern {

namespace {

RuleOutcome untouched(int rule) {
    RuleOutcome o;
    o.trace.rule = rule;
    return o;
}

// rule 2 condition battery; v must be live and unlabeled
std::optional<Label> forced_label(const FadlInstance& inst, VertexId v) {
    const Digraph& g = inst.graph;
    const Labeling& l = inst.labeling;
    int in = g.in_degree(v), out = g.out_degree(v);

    bool fork = false;
    if (in == 0) {
        fork = true;
    } else if (in == 1 && l.get(g.in_neighbors(v)[0]) == Label::fork) {
        fork = true;
    } else {
        int good = 0;
        for (VertexId u : g.out_neighbors(v))
            if (l.get(u) == Label::merge ||
                (l.get(u) == Label::fork && g.in_degree(u) == 1))
                ++good;
        if (good >= in + 1) fork = true;
    }
    if (!fork && out > inst.budget + 1) fork = true;
    if (fork) return Label::fork;

    bool merge = false;
    if (out == 0) {
        merge = true;
    } else if (out == 1 && l.get(g.out_neighbors(v)[0]) == Label::merge) {
        merge = true;
    } else {
        int good = 0;
        for (VertexId u : g.in_neighbors(v))
            if (l.get(u) == Label::fork ||
                (l.get(u) == Label::merge && g.out_degree(u) == 1))
                ++good;
        if (good >= out + 1) merge = true;
    }
    if (!merge && in > inst.budget + 1) merge = true;
    if (merge) return Label::merge;
    return std::nullopt;
}

bool dissolve_applicable(const FadlInstance& inst, VertexId v) {
    const Digraph& g = inst.graph;
    if (g.in_degree(v) != 1 || g.out_degree(v) != 1) return false;
    VertexId u = g.in_neighbors(v)[0];
    VertexId w = g.out_neighbors(v)[0];
    if (u == w) return false;
    if (g.in_degree(w) != 1 && g.out_degree(u) != 1) return false;
    const Labeling& l = inst.labeling;
    auto lu = l.get(u), lv = l.get(v), lw = l.get(w);
    if (lu && lv && lu != lv) return false;
    if (lv && lw && lv != lw) return false;
    return true;
}

bool remove_sinks_applicable(const FadlInstance& inst, VertexId v) {
    const Digraph& g = inst.graph;
    const Labeling& l = inst.labeling;
    if (!l.is_labeled(v)) return false;
    for (VertexId u : g.out_neighbors(v))
        if (!l.is_labeled(u)) return false;
    for (VertexId u : g.in_neighbors(v))
        if (!l.is_labeled(u)) return false;
    // A merge source keeps at most one out-arc in any valid labeling, so it
    // is only disposable when a single merge-bound arc (or none) remains;
    // removing one with more out-arcs would silently drop the forced
    // deletions. Fork sinks are the mirror image.
    if (g.in_degree(v) == 0) {
        if (l.get(v) == Label::fork) {
            bool blocked = false;
            for (VertexId u : g.out_neighbors(v))
                if (l.get(u) == Label::fork && g.in_degree(u) > 1)
                    blocked = true;
            if (!blocked) return true;
        } else if (g.out_degree(v) == 0 ||
                   (g.out_degree(v) == 1 &&
                    l.get(g.out_neighbors(v)[0]) == Label::merge)) {
            return true;
        }
    }
    if (g.out_degree(v) == 0) {
        if (l.get(v) == Label::merge) {
            bool blocked = false;
            for (VertexId u : g.in_neighbors(v))
                if (l.get(u) == Label::merge && g.out_degree(u) > 1)
                    blocked = true;
            if (!blocked) return true;
        } else if (g.in_degree(v) == 0 ||
                   (g.in_degree(v) == 1 &&
                    l.get(g.in_neighbors(v)[0]) == Label::fork)) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string RuleTrace::describe() const {
    std::ostringstream s;
    s << "rule " << rule;
    for (const Arc& a : arcs_removed) s << " -arc(" << a.tail << "," << a.head << ")";
    for (const Arc& a : arcs_added) s << " +arc(" << a.tail << "," << a.head << ")";
    for (auto& [v, l] : labels_set)
        s << " label(" << v << "=" << (l == Label::fork ? 'F' : 'M') << ")";
    for (VertexId v : vertices_removed) s << " -vertex(" << v << ")";
    if (budget_delta != 0) s << " k" << (budget_delta > 0 ? "+" : "") << budget_delta;
    if (!note.empty()) s << " [" << note << "]";
    return s.str();
}

std::int64_t lower_bound_excess(const FadlInstance& inst) {
    std::int64_t sum = 0;
    for (VertexId v : inst.graph.vertices()) {
        int in = inst.graph.in_degree(v);
        int out = inst.graph.out_degree(v);
        auto l = inst.labeling.get(v);
        if (l == Label::merge) {
            if (out > 1) sum += out - 1;
        } else if (l == Label::fork) {
            if (in > 1) sum += in - 1;
        } else if (in > 1 && out > 1) {
            sum += std::min(in, out) - 1;
        }
    }
    return sum;
}

RuleOutcome rule_lower_bound(const FadlInstance& inst) {
    RuleOutcome o;
    o.trace.rule = 1;
    if (inst.budget < 0) {
        o.kind = RuleKind::trivial_no;
        o.trace.note = "negative budget";
        return o;
    }
    std::int64_t sum = lower_bound_excess(inst);
    if (sum > 2 * inst.budget) {
        o.kind = RuleKind::trivial_no;
        o.trace.note = "degree excess " + std::to_string(sum);
    }
    return o;
}

RuleOutcome rule_set_label(FadlInstance& inst, VertexId v) {
    if (!inst.graph.is_live(v))
        throw std::invalid_argument("rule 2 on a dead vertex");
    if (inst.labeling.is_labeled(v))
        throw std::logic_error("rule 2 on a labeled vertex");
    auto forced = forced_label(inst, v);
    if (!forced) return untouched(2);
    inst.labeling.set(v, *forced);
    RuleOutcome o;
    o.kind = RuleKind::changed;
    o.trace.rule = 2;
    o.trace.labels_set.emplace_back(v, *forced);
    return o;
}

RuleOutcome rule_dissolve(FadlInstance& inst, VertexId v) {
    if (!inst.graph.is_live(v))
        throw std::invalid_argument("rule 3 on a dead vertex");
    if (!dissolve_applicable(inst, v)) return untouched(3);
    Digraph& g = inst.graph;
    VertexId u = g.in_neighbors(v)[0];
    VertexId w = g.out_neighbors(v)[0];
    if (g.has_arc(u, w))
        throw std::logic_error("dissolve would create a parallel arc");
    RuleOutcome o;
    o.kind = RuleKind::changed;
    o.trace.rule = 3;
    o.trace.arcs_removed = {{u, v}, {v, w}};
    o.trace.arcs_added = {{u, w}};
    o.trace.vertices_removed = {v};
    inst.labeling.erase(v);
    g.remove_vertex(v);
    g.add_arc(u, w);
    return o;
}

RuleOutcome rule_break_cycle(FadlInstance& inst, std::span<const VertexId> cycle) {
    const Digraph& g = inst.graph;
    std::size_t len = cycle.size();
    if (len < 2) throw std::invalid_argument("cycle too short");
    for (std::size_t i = 0; i < len; ++i) {
        if (!g.is_live(cycle[i]))
            throw std::invalid_argument("cycle through a dead vertex");
        if (!g.has_arc(cycle[i], cycle[(i + 1) % len]))
            throw std::invalid_argument("vertex sequence is not a cycle");
    }
    std::vector<VertexId> dedup(cycle.begin(), cycle.end());
    std::sort(dedup.begin(), dedup.end());
    if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
        throw std::invalid_argument("cycle repeats a vertex");

    auto all_in_one = [&] {
        for (VertexId v : cycle)
            if (g.in_degree(v) != 1) return false;
        return true;
    };
    auto all_out_one = [&] {
        for (VertexId v : cycle)
            if (g.out_degree(v) != 1) return false;
        return true;
    };
    auto uniform = [&](Label want) {
        bool all_unlabeled = true, all_want = true;
        for (VertexId v : cycle) {
            auto l = inst.labeling.get(v);
            if (l) all_unlabeled = false;
            if (l != want) all_want = false;
        }
        return all_unlabeled || all_want;
    };

    bool in_case = all_in_one() && uniform(Label::fork);
    bool out_case = all_out_one() && uniform(Label::merge);
    if (!in_case && !out_case) return untouched(4);

    Arc best{cycle[0], cycle[1]};
    for (std::size_t i = 1; i < len; ++i) {
        Arc a{cycle[i], cycle[(i + 1) % len]};
        if (a < best) best = a;
    }
    inst.graph.remove_arc(best.tail, best.head);
    inst.budget -= 1;
    RuleOutcome o;
    o.kind = RuleKind::changed;
    o.trace.rule = 4;
    o.trace.arcs_removed = {best};
    o.trace.budget_delta = -1;
    return o;
}

RuleOutcome rule_shift_neighbors(FadlInstance& inst, VertexId u, VertexId v,
                                 VertexId w) {
    Digraph& g = inst.graph;
    if (!g.is_live(u) || !g.is_live(v) || !g.is_live(w)) return untouched(5);
    if (!g.has_arc(u, v) || !g.has_arc(v, w)) return untouched(5);
    const Labeling& l = inst.labeling;

    if (g.in_degree(u) == 1 && g.in_degree(v) == 1 && g.in_degree(w) == 1 &&
        l.get(u) != Label::merge && l.get(v) != Label::merge) {
        for (VertexId x : g.out_neighbors(v)) {
            if (x == w || x == u || g.has_arc(u, x)) continue;
            g.remove_arc(v, x);
            g.add_arc(u, x);
            RuleOutcome o;
            o.kind = RuleKind::changed;
            o.trace.rule = 5;
            o.trace.arcs_removed = {{v, x}};
            o.trace.arcs_added = {{u, x}};
            o.trace.note = "out-shift";
            return o;
        }
    }
    if (g.out_degree(u) == 1 && g.out_degree(v) == 1 && g.out_degree(w) == 1 &&
        l.get(v) != Label::fork && l.get(w) != Label::fork) {
        for (VertexId x : g.in_neighbors(v)) {
            if (x == u || x == w || g.has_arc(x, w)) continue;
            g.remove_arc(x, v);
            g.add_arc(x, w);
            RuleOutcome o;
            o.kind = RuleKind::changed;
            o.trace.rule = 5;
            o.trace.arcs_removed = {{x, v}};
            o.trace.arcs_added = {{x, w}};
            o.trace.note = "in-shift";
            return o;
        }
    }
    return untouched(5);
}

RuleOutcome rule_labeled_neighbor(FadlInstance& inst, VertexId v, VertexId u) {
    const Digraph& g = inst.graph;
    if (!g.is_live(v) || !g.is_live(u) || !g.has_arc(v, u))
        throw std::invalid_argument("rule 6 needs an arc (v,u)");
    if (inst.labeling.is_labeled(v) || inst.labeling.is_labeled(u))
        throw std::logic_error("rule 6 on a labeled endpoint");

    bool head_case = false, tail_case = false;
    if (g.in_degree(u) == 1 && g.in_degree(v) == 1)
        for (VertexId w : g.out_neighbors(v))
            if (inst.labeling.get(w) == Label::merge) head_case = true;
    if (g.out_degree(u) == 1 && g.out_degree(v) == 1)
        for (VertexId w : g.in_neighbors(u))
            if (inst.labeling.get(w) == Label::fork) tail_case = true;
    if (head_case && tail_case)
        throw std::logic_error("rule 6 cases cannot overlap");

    if (!head_case && !tail_case) return untouched(6);
    RuleOutcome o;
    o.kind = RuleKind::changed;
    o.trace.rule = 6;
    if (head_case) {
        inst.labeling.set(u, Label::fork);
        o.trace.labels_set.emplace_back(u, Label::fork);
    } else {
        inst.labeling.set(v, Label::merge);
        o.trace.labels_set.emplace_back(v, Label::merge);
    }
    return o;
}

RuleOutcome rule_remove_arcs(FadlInstance& inst, VertexId v, VertexId u) {
    if (!inst.graph.is_live(v) || !inst.graph.is_live(u) ||
        !inst.graph.has_arc(v, u))
        throw std::invalid_argument("rule 7 needs an arc (v,u)");
    auto lv = inst.labeling.get(v), lu = inst.labeling.get(u);
    if (!lv || !lu) throw std::logic_error("rule 7 on an unlabeled endpoint");

    RuleOutcome o;
    o.trace.rule = 7;
    if (lv == Label::fork && lu == Label::merge) {
        inst.graph.remove_arc(v, u);
        o.kind = RuleKind::changed;
        o.trace.arcs_removed = {{v, u}};
    } else if (lv == Label::merge && lu == Label::fork) {
        inst.graph.remove_arc(v, u);
        inst.budget -= 1;
        o.kind = RuleKind::changed;
        o.trace.arcs_removed = {{v, u}};
        o.trace.budget_delta = -1;
    }
    return o;
}

RuleOutcome rule_remove_sinks(FadlInstance& inst, VertexId v) {
    if (!inst.graph.is_live(v))
        throw std::invalid_argument("rule 8 on a dead vertex");
    if (!remove_sinks_applicable(inst, v)) return untouched(8);
    RuleOutcome o;
    o.kind = RuleKind::changed;
    o.trace.rule = 8;
    for (VertexId x : inst.graph.in_neighbors(v))
        o.trace.arcs_removed.push_back({x, v});
    for (VertexId x : inst.graph.out_neighbors(v))
        o.trace.arcs_removed.push_back({v, x});
    std::sort(o.trace.arcs_removed.begin(), o.trace.arcs_removed.end());
    o.trace.vertices_removed = {v};
    inst.labeling.erase(v);
    inst.graph.remove_vertex(v);
    return o;
}

std::int64_t shift_potential(const FadlInstance& inst) {
    const Digraph& g = inst.graph;
    const Labeling& l = inst.labeling;
    std::int64_t count = 0;
    for (VertexId v : g.vertices()) {
        if (g.in_degree(v) == 1 && l.get(v) != Label::merge) {
            VertexId u = g.in_neighbors(v)[0];
            if (g.in_degree(u) == 1 && l.get(u) != Label::merge) {
                for (VertexId w : g.out_neighbors(v)) {
                    if (g.in_degree(w) != 1) continue;
                    for (VertexId x : g.out_neighbors(v))
                        if (x != w && x != u && !g.has_arc(u, x)) ++count;
                }
            }
        }
        if (g.out_degree(v) == 1 && l.get(v) != Label::fork) {
            VertexId w = g.out_neighbors(v)[0];
            if (g.out_degree(w) == 1 && l.get(w) != Label::fork) {
                for (VertexId u : g.in_neighbors(v)) {
                    if (g.out_degree(u) != 1) continue;
                    for (VertexId x : g.in_neighbors(v))
                        if (x != u && x != w && !g.has_arc(x, w)) ++count;
                }
            }
        }
    }
    return count;
}

namespace {

// Follow unit-degree arcs inside one vertex class and report the first cycle.
// `use_in` walks backward through the unique in-arc; the returned sequence is
// in forward arc order, rotated to start at its smallest vertex.
std::optional<std::vector<VertexId>> uniform_cycle(const FadlInstance& inst,
                                                   bool use_in,
                                                   std::optional<Label> want) {
    const Digraph& g = inst.graph;
    auto in_class = [&](VertexId v) {
        if (!g.is_live(v)) return false;
        if ((use_in ? g.in_degree(v) : g.out_degree(v)) != 1) return false;
        return inst.labeling.get(v) == want;
    };
    std::vector<char> done(g.capacity(), 0);
    std::vector<char> on_walk(g.capacity(), 0);
    for (VertexId s : g.vertices()) {
        if (done[s] || !in_class(s)) continue;
        std::vector<VertexId> walk;
        VertexId v = s;
        while (true) {
            walk.push_back(v);
            on_walk[v] = 1;
            VertexId next =
                use_in ? g.in_neighbors(v)[0] : g.out_neighbors(v)[0];
            if (!in_class(next) || done[next]) break;
            if (on_walk[next]) {
                // unwind to the cycle start
                std::vector<VertexId> cyc;
                std::size_t j = walk.size();
                while (walk[--j] != next) {}
                for (std::size_t i = j; i < walk.size(); ++i)
                    cyc.push_back(walk[i]);
                if (use_in) std::reverse(cyc.begin(), cyc.end());
                auto smallest = std::min_element(cyc.begin(), cyc.end());
                std::rotate(cyc.begin(), smallest, cyc.end());
                return cyc;
            }
            v = next;
        }
        for (VertexId x : walk) {
            done[x] = 1;
            on_walk[x] = 0;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<ApplicableSite> find_applicable_rule(const FadlInstance& inst,
                                                   int max_rule) {
    const Digraph& g = inst.graph;
    const Labeling& l = inst.labeling;

    if (inst.budget < 0 || lower_bound_excess(inst) > 2 * inst.budget)
        return ApplicableSite{1, {}};
    if (max_rule < 2) return std::nullopt;

    for (VertexId v : g.vertices())
        if (!l.is_labeled(v) && forced_label(inst, v))
            return ApplicableSite{2, {v}};
    if (max_rule < 3) return std::nullopt;

    for (VertexId v : g.vertices())
        if (dissolve_applicable(inst, v)) return ApplicableSite{3, {v}};
    if (max_rule < 4) return std::nullopt;

    const std::pair<bool, std::optional<Label>> cycle_classes[] = {
        {true, std::nullopt},
        {true, Label::fork},
        {false, std::nullopt},
        {false, Label::merge}};
    for (const auto& [use_in, want] : cycle_classes)
        if (auto cyc = uniform_cycle(inst, use_in, want))
            return ApplicableSite{4, *cyc};
    if (max_rule < 5) return std::nullopt;

    // out-shift sites: v is the path's middle vertex
    for (VertexId v : g.vertices()) {
        if (g.in_degree(v) != 1 || l.get(v) == Label::merge) continue;
        VertexId u = g.in_neighbors(v)[0];
        if (g.in_degree(u) != 1 || l.get(u) == Label::merge) continue;
        for (VertexId w : g.out_neighbors(v)) {
            if (g.in_degree(w) != 1) continue;
            for (VertexId x : g.out_neighbors(v))
                if (x != w && x != u && !g.has_arc(u, x))
                    return ApplicableSite{5, {u, v, w}};
        }
    }
    // in-shift sites
    for (VertexId v : g.vertices()) {
        if (g.out_degree(v) != 1 || l.get(v) == Label::fork) continue;
        VertexId w = g.out_neighbors(v)[0];
        if (g.out_degree(w) != 1 || l.get(w) == Label::fork) continue;
        for (VertexId u : g.in_neighbors(v)) {
            if (g.out_degree(u) != 1) continue;
            for (VertexId x : g.in_neighbors(v))
                if (x != u && x != w && !g.has_arc(x, w))
                    return ApplicableSite{5, {u, v, w}};
        }
    }
    if (max_rule < 6) return std::nullopt;

    for (const Arc& a : g.arcs()) {
        if (l.is_labeled(a.tail) || l.is_labeled(a.head)) continue;
        bool head_case = false, tail_case = false;
        if (g.in_degree(a.head) == 1 && g.in_degree(a.tail) == 1)
            for (VertexId w : g.out_neighbors(a.tail))
                if (l.get(w) == Label::merge) head_case = true;
        if (g.out_degree(a.head) == 1 && g.out_degree(a.tail) == 1)
            for (VertexId w : g.in_neighbors(a.head))
                if (l.get(w) == Label::fork) tail_case = true;
        if (head_case || tail_case) return ApplicableSite{6, {a.tail, a.head}};
    }
    if (max_rule < 7) return std::nullopt;

    for (const Arc& a : g.arcs()) {
        auto lt = l.get(a.tail), lh = l.get(a.head);
        if (!lt || !lh) continue;
        if ((lt == Label::fork && lh == Label::merge) ||
            (lt == Label::merge && lh == Label::fork))
            return ApplicableSite{7, {a.tail, a.head}};
    }
    if (max_rule < 8) return std::nullopt;

    for (VertexId v : g.vertices())
        if (remove_sinks_applicable(inst, v)) return ApplicableSite{8, {v}};

    return std::nullopt;
}

RuleOutcome apply_rule_at(FadlInstance& inst, const ApplicableSite& site) {
    switch (site.rule) {
        case 1:
            return rule_lower_bound(inst);
        case 2:
            return rule_set_label(inst, site.vertices.at(0));
        case 3:
            return rule_dissolve(inst, site.vertices.at(0));
        case 4:
            return rule_break_cycle(inst, site.vertices);
        case 5:
            return rule_shift_neighbors(inst, site.vertices.at(0),
                                        site.vertices.at(1), site.vertices.at(2));
        case 6:
            return rule_labeled_neighbor(inst, site.vertices.at(0),
                                         site.vertices.at(1));
        case 7:
            return rule_remove_arcs(inst, site.vertices.at(0),
                                    site.vertices.at(1));
        case 8:
            return rule_remove_sinks(inst, site.vertices.at(0));
        default:
            throw std::invalid_argument("unknown rule id");
    }
}

}  // namespace funnelkern
