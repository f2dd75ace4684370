#pragma once

#include <cstdint>
#include <optional>

#include "funnelkern/instance.hpp"

namespace funnelkern {

// Arc set with in-degree at most one per head and no cycles (an out-forest).
struct Branching {
    std::vector<Arc> arcs;
};

bool is_valid_branching(const Digraph& g, const Branching& b);

struct BranchingResult {
    int size = 0;
    Branching branching;
};

// Maximum-cardinality branching. Every strongly connected component can be
// spanned from a single entry vertex, so the optimum is n minus the number of
// source components of the condensation; the construction follows that proof.
BranchingResult max_branching(const Digraph& g);

struct LabelingCost {
    std::int64_t cost = 0;
    std::vector<Arc> deletions;
};

// Cheapest deletion set that makes a fixed complete labeling valid: all
// Merge->Fork arcs go, each side keeps a maximum branching (the Merge side
// through the reversed graph), Fork->Merge arcs always stay.
LabelingCost cost_for_labeling(const Digraph& g, const Labeling& complete);

enum class SolveStatus { yes, no, unknown };

struct SolveResult {
    SolveStatus status = SolveStatus::unknown;
    std::optional<Solution> solution;       // present on yes
    std::optional<std::int64_t> optimum;    // present when optimizing
};

struct SolveOptions {
    bool optimize = false;                  // search past the budget for the optimum
    std::uint64_t node_budget = 1'000'000;  // branch and bound only
};

// Enumerates deletion sets in nondecreasing size (lexicographic within a
// size) and accepts the first feasible one. Exponential; for tiny instances
// and cross-validation.
SolveResult solve_bruteforce(const FadlInstance& inst, const SolveOptions& opts = {});

// Minimizes cost_for_labeling over all complete labelings extending the
// instance labeling. Exponential in the number of unlabeled vertices; the
// second independent oracle.
SolveResult solve_labelings(const FadlInstance& inst, const SolveOptions& opts = {});

// Branch and bound over labelings with label propagation and a degree-excess
// lower bound. Returns unknown (never a wrong answer) once the node budget is
// exhausted.
SolveResult solve_branch_and_bound(const FadlInstance& inst,
                                   const SolveOptions& opts = {});

}  // namespace funnelkern
