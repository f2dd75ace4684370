#include "funnelkern/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace funnelkern {

namespace {

std::string arc_str(VertexId u, VertexId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

bool sorted_contains(const std::vector<VertexId>& xs, VertexId v) {
    return std::binary_search(xs.begin(), xs.end(), v);
}

void sorted_insert(std::vector<VertexId>& xs, VertexId v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    xs.erase(it);
}

}  // namespace

Digraph::Digraph(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    out_.resize(n);
    in_.resize(n);
    live_.assign(n, 1);
    live_count_ = n;
}

VertexId Digraph::check(VertexId v) const {
    if (v < 0 || v >= capacity() || !live_[v])
        throw std::invalid_argument("no such vertex: " + std::to_string(v));
    return v;
}

bool Digraph::is_live(VertexId v) const {
    return v >= 0 && v < capacity() && live_[v];
}

VertexId Digraph::add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    live_.push_back(1);
    ++live_count_;
    return capacity() - 1;
}

bool Digraph::has_arc(VertexId u, VertexId v) const {
    return sorted_contains(out_[check(u)], check(v));
}

void Digraph::add_arc(VertexId u, VertexId v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self-loop " + arc_str(u, v));
    if (has_arc(u, v)) throw std::invalid_argument("duplicate arc " + arc_str(u, v));
    sorted_insert(out_[u], v);
    sorted_insert(in_[v], u);
    ++arc_count_;
}

void Digraph::remove_arc(VertexId u, VertexId v) {
    if (!has_arc(u, v)) throw std::invalid_argument("missing arc " + arc_str(u, v));
    sorted_erase(out_[u], v);
    sorted_erase(in_[v], u);
    --arc_count_;
}

void Digraph::remove_vertex(VertexId v) {
    check(v);
    for (VertexId w : out_[v]) {
        sorted_erase(in_[w], v);
        --arc_count_;
    }
    for (VertexId w : in_[v]) {
        sorted_erase(out_[w], v);
        --arc_count_;
    }
    out_[v].clear();
    in_[v].clear();
    live_[v] = 0;
    --live_count_;
}

std::vector<VertexId> Digraph::vertices() const {
    std::vector<VertexId> vs;
    vs.reserve(live_count_);
    for (VertexId v = 0; v < capacity(); ++v)
        if (live_[v]) vs.push_back(v);
    return vs;
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> as;
    as.reserve(arc_count_);
    for (VertexId v = 0; v < capacity(); ++v)
        for (VertexId w : out_[v]) as.push_back({v, w});
    return as;
}

bool Digraph::operator==(const Digraph& other) const {
    if (live_count_ != other.live_count_ || arc_count_ != other.arc_count_)
        return false;
    int cap = std::max(capacity(), other.capacity());
    for (VertexId v = 0; v < cap; ++v) {
        bool a = is_live(v), b = other.is_live(v);
        if (a != b) return false;
        if (a && out_[v] != other.out_[v]) return false;
    }
    return true;
}

void Digraph::check_consistency() const {
    std::int64_t arcs_seen = 0;
    int live_seen = 0;
    for (VertexId v = 0; v < capacity(); ++v) {
        if (!live_[v]) {
            if (!out_[v].empty() || !in_[v].empty())
                throw std::logic_error("tombstone with incident arcs");
            continue;
        }
        ++live_seen;
        if (!std::is_sorted(out_[v].begin(), out_[v].end()) ||
            !std::is_sorted(in_[v].begin(), in_[v].end()))
            throw std::logic_error("unsorted adjacency");
        for (VertexId w : out_[v]) {
            if (w == v) throw std::logic_error("self-loop stored");
            if (!is_live(w)) throw std::logic_error("arc to tombstone");
            if (!sorted_contains(in_[w], v))
                throw std::logic_error("asymmetric arc " + arc_str(v, w));
            ++arcs_seen;
        }
        if (std::adjacent_find(out_[v].begin(), out_[v].end()) != out_[v].end())
            throw std::logic_error("parallel arc stored");
    }
    if (arcs_seen != arc_count_) throw std::logic_error("arc count drifted");
    if (live_seen != live_count_) throw std::logic_error("vertex count drifted");
}

BuildResult build_digraph(int n, std::span<const Arc> arcs) {
    BuildResult r{Digraph(n), 0};
    for (const Arc& a : arcs) {
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            throw std::invalid_argument("arc endpoint out of range " +
                                        arc_str(a.tail, a.head));
        if (a.tail == a.head)
            throw std::invalid_argument("self-loop " + arc_str(a.tail, a.head));
        if (r.graph.has_arc(a.tail, a.head))
            ++r.duplicates_collapsed;
        else
            r.graph.add_arc(a.tail, a.head);
    }
    return r;
}

Digraph delete_arcs(const Digraph& g, std::span<const Arc> to_delete) {
    Digraph out = g;
    for (const Arc& a : to_delete) out.remove_arc(a.tail, a.head);
    return out;
}

std::optional<std::vector<VertexId>> topological_order(const Digraph& g) {
    std::vector<int> indeg(g.capacity(), 0);
    std::vector<VertexId> order;
    order.reserve(g.vertex_count());
    for (VertexId v : g.vertices()) {
        indeg[v] = g.in_degree(v);
        if (indeg[v] == 0) order.push_back(v);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (VertexId w : g.out_neighbors(order[i]))
            if (--indeg[w] == 0) order.push_back(w);
    }
    if (static_cast<int>(order.size()) != g.vertex_count()) return std::nullopt;
    return order;
}

bool is_acyclic(const Digraph& g) { return topological_order(g).has_value(); }

std::optional<std::vector<VertexId>> find_cycle(const Digraph& g) {
    // iterative DFS with colors; back arc closes the cycle on the stack
    enum { white, grey, black };
    std::vector<char> color(g.capacity(), white);
    std::vector<VertexId> path;
    struct Frame {
        VertexId v;
        std::size_t next = 0;
    };
    for (VertexId root : g.vertices()) {
        if (color[root] != white) continue;
        std::vector<Frame> stack{{root}};
        color[root] = grey;
        path.push_back(root);
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& succ = g.out_neighbors(f.v);
            if (f.next < succ.size()) {
                VertexId w = succ[f.next++];
                if (color[w] == grey) {
                    auto it = std::find(path.begin(), path.end(), w);
                    return std::vector<VertexId>(it, path.end());
                }
                if (color[w] == white) {
                    color[w] = grey;
                    path.push_back(w);
                    stack.push_back({w});
                }
            } else {
                color[f.v] = black;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

std::vector<VertexId> reachable_set(const Digraph& g,
                                    std::span<const VertexId> sources,
                                    Direction dir) {
    std::vector<char> seen(g.capacity(), 0);
    std::vector<VertexId> queue;
    for (VertexId s : sources) {
        if (!g.is_live(s))
            throw std::invalid_argument("source not live: " + std::to_string(s));
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto& next = dir == Direction::forward ? g.out_neighbors(queue[i])
                                                     : g.in_neighbors(queue[i]);
        for (VertexId w : next)
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

Digraph induced_subgraph(const Digraph& g, std::span<const VertexId> keep) {
    std::vector<char> in_set(g.capacity(), 0);
    for (VertexId v : keep) {
        if (!g.is_live(v))
            throw std::invalid_argument("induced set contains dead vertex " +
                                        std::to_string(v));
        in_set[v] = 1;
    }
    Digraph sub(g.capacity());
    for (VertexId v = 0; v < g.capacity(); ++v) {
        if (!in_set[v]) continue;
        for (VertexId w : g.out_neighbors(v))
            if (in_set[w]) sub.add_arc(v, w);
    }
    for (VertexId v = 0; v < g.capacity(); ++v)
        if (!in_set[v]) sub.remove_vertex(v);
    return sub;
}

}  // namespace funnelkern
