#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace funnelkern {

using VertexId = int;

struct Arc {
    VertexId tail = 0;
    VertexId head = 0;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Simple digraph: no loops, no parallel arcs (antiparallel pairs are fine).
// Vertex ids are dense indices. Removed vertices become tombstones and their
// ids are never reused, so ids stay stable across a reduction run. Adjacency
// lists are kept sorted, which makes iteration order deterministic and arc
// lookup logarithmic. Degree queries are O(1).
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n);

    // total number of ids ever allocated, including tombstones
    int capacity() const { return static_cast<int>(out_.size()); }
    int vertex_count() const { return live_count_; }
    std::int64_t arc_count() const { return arc_count_; }
    bool is_live(VertexId v) const;

    VertexId add_vertex();
    bool has_arc(VertexId u, VertexId v) const;
    void add_arc(VertexId u, VertexId v);
    void remove_arc(VertexId u, VertexId v);
    void remove_vertex(VertexId v);

    int out_degree(VertexId v) const { return static_cast<int>(out_[check(v)].size()); }
    int in_degree(VertexId v) const { return static_cast<int>(in_[check(v)].size()); }
    const std::vector<VertexId>& out_neighbors(VertexId v) const { return out_[check(v)]; }
    const std::vector<VertexId>& in_neighbors(VertexId v) const { return in_[check(v)]; }

    std::vector<VertexId> vertices() const;  // live ids, ascending
    std::vector<Arc> arcs() const;           // sorted by (tail, head)

    // structural equality on the live part, id for id
    bool operator==(const Digraph& other) const;

    // sanity sweep over the internal representation, throws on corruption
    void check_consistency() const;

private:
    VertexId check(VertexId v) const;

    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::vector<char> live_;
    std::int64_t arc_count_ = 0;
    int live_count_ = 0;
};

struct BuildResult {
    Digraph graph;
    int duplicates_collapsed = 0;
};

// Builds a digraph on vertices 0..n-1. Throws on self-loops and out-of-range
// endpoints; duplicate pairs are collapsed and counted.
BuildResult build_digraph(int n, std::span<const Arc> arcs);

// Copy with the given arcs removed; throws if any of them is absent.
Digraph delete_arcs(const Digraph& g, std::span<const Arc> to_delete);

bool is_acyclic(const Digraph& g);

// Live vertices in some topological order, or nothing if the graph is cyclic.
std::optional<std::vector<VertexId>> topological_order(const Digraph& g);

// Some directed cycle as a vertex sequence (without repeating the start), or
// nothing if acyclic.
std::optional<std::vector<VertexId>> find_cycle(const Digraph& g);

enum class Direction { forward, backward };

// Vertices reachable from `sources` (inclusive), ascending.
std::vector<VertexId> reachable_set(const Digraph& g,
                                    std::span<const VertexId> sources,
                                    Direction dir);

// Digraph on the same id space whose live part is `keep` with exactly the
// arcs of g between kept vertices.
Digraph induced_subgraph(const Digraph& g, std::span<const VertexId> keep);

}  // namespace funnelkern
