#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "funnelkern/digraph.hpp"
#include "funnelkern/labeling.hpp"

namespace funnelkern {

// A funnel is an acyclic digraph whose vertices split into a Fork part
// inducing an out-forest and a Merge part inducing an in-forest, with no arc
// from the Merge part into the Fork part. Equivalently: the graph is acyclic
// and no vertex of in-degree >= 2 reaches a vertex of out-degree >= 2.
bool is_funnel(const Digraph& g);

// Completes a partial labeling to a full Fork/Merge witness if possible.
// Merge is forced exactly on the forward closure of the merge-labeled and
// in-degree >= 2 vertices; everything else defaults to Fork. Returns nothing
// when the graph is cyclic or the forced Merge and Fork regions collide.
std::optional<Labeling> has_labeling_extension(const Digraph& g,
                                               const Labeling& partial);

// Checks a complete labeling: Fork vertices induce an out-forest, Merge
// vertices induce an in-forest, and no arc runs Merge -> Fork.
bool is_funnel_labeling(const Digraph& g, const Labeling& complete);

// Obstruction certificate: a path from a vertex with two in-arcs to a vertex
// with two out-arcs, together with those arc pairs. The two endpoints may
// coincide (path of length zero).
struct ForbiddenWitness {
    VertexId merge_vertex = 0;
    VertexId fork_vertex = 0;
    std::vector<VertexId> path;  // merge_vertex .. fork_vertex inclusive
    std::array<VertexId, 2> in_pair{};
    std::array<VertexId, 2> out_pair{};
};

// Shortest such witness (ties broken toward smaller vertex ids), or nothing
// if the graph is a funnel. Requires an acyclic input and throws otherwise.
std::optional<ForbiddenWitness> find_forbidden_witness(const Digraph& g);

// True when the induced subgraph on `subset` is a funnel with exactly one
// source and admits a partition where the Fork side has global in-degree <= 1,
// the Merge side has global out-degree <= 1, and no induced arc runs
// Merge -> Fork.
bool is_local_funnel(const Digraph& g, std::span<const VertexId> subset);

}  // namespace funnelkern
