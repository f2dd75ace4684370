#include "funnelkern/funnel.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace funnelkern {

namespace {

// marks[v] = 1 for every vertex reachable from the seeds (seeds included)
std::vector<char> closure(const Digraph& g, const std::vector<VertexId>& seeds,
                          Direction dir) {
    std::vector<char> marks(g.capacity(), 0);
    std::vector<VertexId> queue;
    for (VertexId s : seeds)
        if (!marks[s]) {
            marks[s] = 1;
            queue.push_back(s);
        }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto& next = dir == Direction::forward
                               ? g.out_neighbors(queue[i])
                               : g.in_neighbors(queue[i]);
        for (VertexId w : next)
            if (!marks[w]) {
                marks[w] = 1;
                queue.push_back(w);
            }
    }
    return marks;
}

}  // namespace

bool is_funnel(const Digraph& g) {
    if (!is_acyclic(g)) return false;
    std::vector<VertexId> merges;
    for (VertexId v : g.vertices())
        if (g.in_degree(v) >= 2) merges.push_back(v);
    auto reach = closure(g, merges, Direction::forward);
    for (VertexId v : g.vertices())
        if (reach[v] && g.out_degree(v) >= 2) return false;
    return true;
}

std::optional<Labeling> has_labeling_extension(const Digraph& g,
                                               const Labeling& partial) {
    if (!is_acyclic(g)) return std::nullopt;

    std::vector<VertexId> merge_seeds, fork_seeds;
    for (VertexId v : g.vertices()) {
        auto l = partial.get(v);
        if (g.in_degree(v) >= 2 || l == Label::merge) merge_seeds.push_back(v);
        if (g.out_degree(v) >= 2 || l == Label::fork) fork_seeds.push_back(v);
    }
    auto merge_forced = closure(g, merge_seeds, Direction::forward);
    auto fork_forced = closure(g, fork_seeds, Direction::backward);

    Labeling full(g.capacity());
    for (VertexId v : g.vertices()) {
        if (merge_forced[v] && fork_forced[v]) return std::nullopt;
        full.set(v, merge_forced[v] ? Label::merge : Label::fork);
    }
    return full;
}

bool is_funnel_labeling(const Digraph& g, const Labeling& complete) {
    for (VertexId v : g.vertices())
        if (!complete.is_labeled(v)) return false;

    std::vector<VertexId> forks, merges;
    for (VertexId v : g.vertices())
        (complete.get(v) == Label::fork ? forks : merges).push_back(v);

    for (VertexId v : merges)
        for (VertexId w : g.out_neighbors(v))
            if (complete.get(w) == Label::fork) return false;

    Digraph fork_part = induced_subgraph(g, forks);
    Digraph merge_part = induced_subgraph(g, merges);
    for (VertexId v : forks)
        if (fork_part.in_degree(v) > 1) return false;
    for (VertexId v : merges)
        if (merge_part.out_degree(v) > 1) return false;
    return is_acyclic(fork_part) && is_acyclic(merge_part);
}

std::optional<ForbiddenWitness> find_forbidden_witness(const Digraph& g) {
    if (!is_acyclic(g))
        throw std::invalid_argument("witness search requires an acyclic digraph");

    // multi-source BFS from all in-degree >= 2 vertices; the first layer that
    // contains an out-degree >= 2 vertex yields the shortest witness path
    constexpr int unreached = std::numeric_limits<int>::max();
    std::vector<int> dist(g.capacity(), unreached);
    std::vector<VertexId> queue;
    for (VertexId v : g.vertices())
        if (g.in_degree(v) >= 2) {
            dist[v] = 0;
            queue.push_back(v);
        }
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (VertexId w : g.out_neighbors(queue[i]))
            if (dist[w] == unreached) {
                dist[w] = dist[queue[i]] + 1;
                queue.push_back(w);
            }

    // ascending id scan, so the first vertex at the minimal distance wins ties
    int best = unreached;
    VertexId fork = -1;
    for (VertexId v : g.vertices())
        if (g.out_degree(v) >= 2 && dist[v] < best) {
            best = dist[v];
            fork = v;
        }
    if (fork < 0) return std::nullopt;

    ForbiddenWitness w;
    w.fork_vertex = fork;
    w.path.push_back(fork);
    VertexId cur = fork;
    while (dist[cur] > 0) {
        // smallest-id predecessor one BFS layer up keeps the path canonical
        VertexId prev = -1;
        for (VertexId p : g.in_neighbors(cur))
            if (dist[p] == dist[cur] - 1) {
                prev = p;
                break;
            }
        w.path.push_back(prev);
        cur = prev;
    }
    std::reverse(w.path.begin(), w.path.end());
    w.merge_vertex = w.path.front();
    const auto& ins = g.in_neighbors(w.merge_vertex);
    const auto& outs = g.out_neighbors(w.fork_vertex);
    w.in_pair = {ins[0], ins[1]};
    w.out_pair = {outs[0], outs[1]};
    return w;
}

bool is_local_funnel(const Digraph& g, std::span<const VertexId> subset) {
    if (subset.empty()) return false;
    Digraph sub = induced_subgraph(g, subset);
    if (!is_acyclic(sub)) return false;

    int sources = 0;
    for (VertexId v : sub.vertices())
        if (sub.in_degree(v) == 0) ++sources;
    if (sources != 1) return false;

    // degree constraints come from the host graph: a vertex with two in-arcs
    // in g cannot sit on the Fork side, one with two out-arcs cannot sit on
    // the Merge side
    Labeling seed(g.capacity());
    for (VertexId v : sub.vertices()) {
        bool big_in = g.in_degree(v) >= 2;
        bool big_out = g.out_degree(v) >= 2;
        if (big_in && big_out) return false;
        if (big_in) seed.set(v, Label::merge);
        if (big_out) seed.set(v, Label::fork);
    }
    return has_labeling_extension(sub, seed).has_value();
}

}  // namespace funnelkern
