#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "funnelkern/digraph.hpp"
#include "funnelkern/labeling.hpp"

namespace funnelkern {

// Labeled arc deletion instance: find at most `budget` arcs whose removal
// leaves a funnel admitting a labeling that extends `labeling`. A negative
// budget means the instance is already refuted.
struct FadlInstance {
    Digraph graph;
    Labeling labeling;
    std::int64_t budget = 0;

    bool operator==(const FadlInstance& other) const {
        return budget == other.budget && graph == other.graph &&
               labeling == other.labeling;
    }
};

// Unlabeled variant; budget is never negative here.
struct FadsInstance {
    Digraph graph;
    std::int64_t budget = 0;
};

struct Solution {
    std::vector<Arc> deleted_arcs;
    Labeling labeling;  // complete labeling of the surviving graph
};

FadlInstance from_fads(const FadsInstance& inst);

// Encodes the labels structurally: budget+2 fresh sinks fed by every Fork
// vertex and budget+2 fresh sources feeding every Merge vertex, making any
// disagreeing relabeling cost more than the budget. Throws when the budget is
// negative; callers emit a trivial no-instance for that case instead.
FadsInstance to_fads(const FadlInstance& inst);

// Full check of a proposed solution: deletion set within budget and without
// duplicates, arcs present, labeling complete and consistent with the
// instance labeling, and the surviving graph labeled as a funnel. On failure
// an explanation lands in `reason` when provided.
bool verify_solution(const FadlInstance& inst, const Solution& sol,
                     std::string* reason = nullptr);

}  // namespace funnelkern
