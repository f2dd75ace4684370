#include "funnelkern/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace funnelkern {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    return next() % n;
}

Digraph gen_forbidden(int k) {
    if (k < 0) throw std::invalid_argument("negative path length");
    // ids: 0,1 sources; 2..2+k the path; k+3, k+4 sinks
    Digraph g(k + 5);
    g.add_arc(0, 2);
    g.add_arc(1, 2);
    for (int i = 0; i < k; ++i) g.add_arc(2 + i, 3 + i);
    g.add_arc(2 + k, k + 3);
    g.add_arc(2 + k, k + 4);
    return g;
}

GeneratedFunnel gen_random_funnel(int n, std::int64_t m, double fork_fraction,
                                  SplitMix64& rng) {
    if (n < 0 || m < 0) throw std::invalid_argument("negative size");
    if (!(fork_fraction >= 0.0 && fork_fraction <= 1.0))
        throw std::invalid_argument("fork fraction outside [0,1]");
    int forks = static_cast<int>(std::ceil(fork_fraction * n));
    forks = std::clamp(forks, 0, n);
    int merges = n - forks;

    GeneratedFunnel out;
    out.graph = Digraph(n);
    out.labeling = Labeling(n);
    Digraph& g = out.graph;
    for (int i = 0; i < forks; ++i) out.labeling.set(i, Label::fork);
    for (int j = 0; j < merges; ++j) out.labeling.set(forks + j, Label::merge);

    // out-forest on the fork side: each vertex picks an earlier parent or
    // stays a root
    for (int i = 1; i < forks; ++i) {
        int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        if (p != i) g.add_arc(p, i);
    }
    // mirrored in-forest on the merge side
    for (int j = 1; j < merges; ++j) {
        int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        if (p != j) g.add_arc(forks + j, forks + p);
    }

    std::int64_t forest = g.arc_count();
    std::int64_t room =
        forest + static_cast<std::int64_t>(forks) * merges;
    std::int64_t target = std::min(std::max(m, forest), room);

    std::int64_t attempts = 0;
    std::int64_t limit = 50 * (target - forest) + 1000;
    while (g.arc_count() < target && attempts < limit) {
        ++attempts;
        int f = static_cast<int>(rng.below(forks));
        int t = forks + static_cast<int>(rng.below(merges));
        if (!g.has_arc(f, t)) g.add_arc(f, t);
    }
    // dense tail: fill deterministically instead of rejection-sampling
    for (int f = 0; f < forks && g.arc_count() < target; ++f)
        for (int t = forks; t < n && g.arc_count() < target; ++t)
            if (!g.has_arc(f, t)) g.add_arc(f, t);
    return out;
}

PlantedInstance gen_planted(int n, std::int64_t m, int k_plant,
                            double fork_fraction, SplitMix64& rng) {
    if (k_plant < 0) throw std::invalid_argument("negative plant count");
    GeneratedFunnel base = gen_random_funnel(n, m, fork_fraction, rng);
    Digraph g = std::move(base.graph);
    std::int64_t room =
        static_cast<std::int64_t>(n) * (n - 1) - g.arc_count();
    if (k_plant > room)
        throw std::invalid_argument("no room for that many extra arcs");

    std::vector<Arc> noise;
    std::int64_t attempts = 0;
    std::int64_t limit = 100LL * k_plant + 1000;
    while (static_cast<int>(noise.size()) < k_plant && attempts < limit) {
        ++attempts;
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        if (a == b || g.has_arc(a, b)) continue;
        g.add_arc(a, b);
        noise.push_back({a, b});
    }
    for (int a = 0; a < n && static_cast<int>(noise.size()) < k_plant; ++a)
        for (int b = 0; b < n && static_cast<int>(noise.size()) < k_plant; ++b) {
            if (a == b || g.has_arc(a, b)) continue;
            g.add_arc(a, b);
            noise.push_back({a, b});
        }
    std::sort(noise.begin(), noise.end());

    PlantedInstance p;
    p.instance = FadsInstance{std::move(g), k_plant};
    p.noise_arcs = std::move(noise);
    p.clean_labeling = std::move(base.labeling);
    return p;
}

Digraph gen_random_digraph(int n, std::int64_t m, SplitMix64& rng) {
    if (n < 0 || m < 0) throw std::invalid_argument("negative size");
    Digraph g(n);
    std::int64_t room = static_cast<std::int64_t>(n) * (n - 1);
    std::int64_t target = std::min(m, room);
    std::int64_t attempts = 0;
    std::int64_t limit = 50 * target + 1000;
    while (g.arc_count() < target && attempts < limit) {
        ++attempts;
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        if (a == b || g.has_arc(a, b)) continue;
        g.add_arc(a, b);
    }
    for (int a = 0; a < n && g.arc_count() < target; ++a)
        for (int b = 0; b < n && g.arc_count() < target; ++b)
            if (a != b && !g.has_arc(a, b)) g.add_arc(a, b);
    return g;
}

}  // namespace funnelkern
