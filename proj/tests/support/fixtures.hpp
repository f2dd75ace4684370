#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>

#include "funnelkern/generator.hpp"
#include "funnelkern/instance.hpp"
#include "funnelkern/solver.hpp"

namespace fixtures {

using namespace funnelkern;

inline Digraph mk(int n, std::initializer_list<Arc> arcs) {
    Digraph g(n);
    for (auto [u, v] : arcs) g.add_arc(u, v);
    return g;
}

// list builders; commas inside braces upset assertion macros otherwise
inline std::vector<Arc> arcv(std::initializer_list<Arc> a) { return a; }
inline std::vector<VertexId> vertv(std::initializer_list<VertexId> v) {
    return v;
}
inline std::vector<std::pair<VertexId, Label>> labv(
    std::initializer_list<std::pair<VertexId, Label>> l) {
    return l;
}

// smallest obstruction stretched by k: two sources, a path, two sinks
inline Digraph obstruction(int k) {
    Digraph g(k + 5);
    g.add_arc(0, 2);
    g.add_arc(1, 2);
    for (int i = 0; i < k; ++i) g.add_arc(2 + i, 3 + i);
    g.add_arc(2 + k, k + 3);
    g.add_arc(2 + k, k + 4);
    return g;
}

// nine vertices, two overlapping obstructions sharing the middle path;
// optimum deletion count is two
inline Digraph needs_two() {
    return mk(9, {{0, 1}, {3, 1}, {1, 2}, {1, 4}, {4, 5}, {5, 7}, {5, 6}, {8, 5}});
}

// labels: '.' unlabeled, 'F' fork, 'M' merge; shorter strings leave the rest
// unlabeled
inline FadlInstance mki(int n, std::initializer_list<Arc> arcs,
                        const std::string& labels, std::int64_t k) {
    FadlInstance inst{Digraph(n), Labeling(n), k};
    for (auto [u, v] : arcs) inst.graph.add_arc(u, v);
    for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
        if (labels[v] == 'F') inst.labeling.set(v, Label::fork);
        if (labels[v] == 'M') inst.labeling.set(v, Label::merge);
    }
    return inst;
}

inline bool oracle_yes(const FadlInstance& inst) {
    return solve_bruteforce(inst).status == SolveStatus::yes;
}

// small random instance for cross checks; label_percent vertices get a coin
// flip label
inline FadlInstance random_instance(SplitMix64& rng, int max_n,
                                    std::int64_t max_m, std::int64_t max_k,
                                    int label_percent = 40) {
    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
    std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1);
    std::int64_t m = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(std::min(max_m, cap)) + 1));
    Digraph g = gen_random_digraph(n, m, rng);
    Labeling lab(n);
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(rng.below(100)) < label_percent)
            lab.set(v, rng.below(2) ? Label::merge : Label::fork);
    std::int64_t k =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_k) + 1));
    return FadlInstance{std::move(g), std::move(lab), k};
}

}  // namespace fixtures
