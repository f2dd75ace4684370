#pragma once

#include <cstdint>
#include <vector>

#include "funnelkern/instance.hpp"

namespace funnelkern {

// Deterministic 64-bit generator; same seed, same stream, everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n), n > 0

private:
    std::uint64_t state_;
};

// Smallest obstruction family: two sources feeding a path of k+1 vertices
// that ends in two sinks. Deleting any one path arc fixes it, nothing
// cheaper does.
Digraph gen_forbidden(int k);

struct GeneratedFunnel {
    Digraph graph;
    Labeling labeling;  // the natural side assignment
};

// Random funnel: an out-forest on the fork side, an in-forest on the merge
// side, then random fork-to-merge arcs up to roughly m total. The target is
// clamped between the forest size and the number of available pairs.
GeneratedFunnel gen_random_funnel(int n, std::int64_t m, double fork_fraction,
                                  SplitMix64& rng);

struct PlantedInstance {
    FadsInstance instance;
    std::vector<Arc> noise_arcs;  // sorted; deleting them restores the funnel
    Labeling clean_labeling;      // labeling of the funnel underneath
};

// Random funnel plus exactly k_plant extra arcs; the result is solvable
// within budget k_plant by construction. Throws when the graph has no room
// for that many extra arcs.
PlantedInstance gen_planted(int n, std::int64_t m, int k_plant,
                            double fork_fraction, SplitMix64& rng);

// Uniform-ish simple digraph with m arcs (clamped to the possible maximum).
Digraph gen_random_digraph(int n, std::int64_t m, SplitMix64& rng);

}  // namespace funnelkern
