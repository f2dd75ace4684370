#include "funnelkern/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include "funnelkern/funnel.hpp"

namespace funnelkern {

FadlInstance from_fads(const FadsInstance& inst) {
    return {inst.graph, Labeling(inst.graph.capacity()), inst.budget};
}

FadsInstance to_fads(const FadlInstance& inst) {
    if (inst.budget < 0)
        throw std::invalid_argument("refuted instance has no gadget encoding");
    Digraph g = inst.graph;
    int copies = static_cast<int>(inst.budget) + 2;
    std::vector<VertexId> fork_sinks(copies), merge_sources(copies);
    for (int i = 0; i < copies; ++i) fork_sinks[i] = g.add_vertex();
    for (int i = 0; i < copies; ++i) merge_sources[i] = g.add_vertex();
    for (VertexId v : inst.graph.vertices()) {
        auto l = inst.labeling.get(v);
        if (l == Label::fork)
            for (VertexId s : fork_sinks) g.add_arc(v, s);
        else if (l == Label::merge)
            for (VertexId s : merge_sources) g.add_arc(s, v);
    }
    return {std::move(g), inst.budget};
}

namespace {

bool fail(std::string* reason, const std::string& why) {
    if (reason) *reason = why;
    return false;
}

}  // namespace

bool verify_solution(const FadlInstance& inst, const Solution& sol,
                     std::string* reason) {
    if (static_cast<std::int64_t>(sol.deleted_arcs.size()) > inst.budget)
        return fail(reason, "deletion set exceeds budget");
    auto sorted = sol.deleted_arcs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return fail(reason, "duplicate arc in deletion set");
    for (const Arc& a : sorted) {
        if (!inst.graph.is_live(a.tail) || !inst.graph.is_live(a.head) ||
            !inst.graph.has_arc(a.tail, a.head))
            return fail(reason, "deleted arc not present in the instance");
    }
    if (!sol.labeling.extends(inst.labeling))
        return fail(reason, "labeling contradicts the instance labeling");
    for (VertexId v : inst.graph.vertices())
        if (!sol.labeling.is_labeled(v))
            return fail(reason, "labeling leaves a vertex unlabeled");
    Digraph remaining = delete_arcs(inst.graph, sorted);
    if (!is_funnel_labeling(remaining, sol.labeling))
        return fail(reason, "surviving graph is not labeled as a funnel");
    return true;
}

}  // namespace funnelkern
