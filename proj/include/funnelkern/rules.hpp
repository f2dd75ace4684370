#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "funnelkern/instance.hpp"

namespace funnelkern {

enum class RuleKind { unchanged, changed, trivial_no };

// Ordered record of one rule application. The kernelizer replays these events
// against its counters, so every removed arc must be listed, including arcs
// that vanished because their endpoint was removed.
struct RuleTrace {
    int rule = 0;
    std::vector<Arc> arcs_removed;
    std::vector<Arc> arcs_added;
    std::vector<std::pair<VertexId, Label>> labels_set;
    std::vector<VertexId> vertices_removed;
    std::int64_t budget_delta = 0;
    std::string note;

    std::string describe() const;
};

struct RuleOutcome {
    RuleKind kind = RuleKind::unchanged;
    RuleTrace trace;
};

// Degree excess: merge vertices pay for extra out-arcs, fork vertices for
// extra in-arcs, unlabeled vertices with both degrees above one for the
// cheaper side. Any solution deletes at least half the sum.
std::int64_t lower_bound_excess(const FadlInstance& inst);

// rule 1: refute when the budget is negative or the excess exceeds twice the
// budget; never mutates
RuleOutcome rule_lower_bound(const FadlInstance& inst);

// rule 2: label v when one of four fork conditions or their merge duals holds
RuleOutcome rule_set_label(FadlInstance& inst, VertexId v);

// rule 3: splice out a vertex with unit in- and out-degree
RuleOutcome rule_dissolve(FadlInstance& inst, VertexId v);

// rule 4: delete one arc of a uniform cycle and pay one unit of budget
RuleOutcome rule_break_cycle(FadlInstance& inst, std::span<const VertexId> cycle);

// rule 5: move one stray neighbor of v along the path (u,v,w)
RuleOutcome rule_shift_neighbors(FadlInstance& inst, VertexId u, VertexId v,
                                 VertexId w);

// rule 6: transfer label pressure across an unlabeled arc (v,u)
RuleOutcome rule_labeled_neighbor(FadlInstance& inst, VertexId v, VertexId u);

// rule 7: resolve an arc between two labeled endpoints
RuleOutcome rule_remove_arcs(FadlInstance& inst, VertexId v, VertexId u);

// rule 8: delete a fully labeled boundary vertex
RuleOutcome rule_remove_sinks(FadlInstance& inst, VertexId v);

// Number of ((u,v,w), x) pairs rule 5 currently accepts; diagnostic only.
std::int64_t shift_potential(const FadlInstance& inst);

// First applicable rule site under a fixed scan order: rules in ascending
// number, vertices and arcs in ascending id order within a rule. `vertices`
// holds the rule arguments: nothing for rule 1, {v} for rules 2/3/8, the
// cycle sequence for rule 4, {u,v,w} for rule 5, {v,u} for rules 6/7.
struct ApplicableSite {
    int rule = 0;
    std::vector<VertexId> vertices;
};

// `max_rule` restricts the scan to rules 1..max_rule.
std::optional<ApplicableSite> find_applicable_rule(const FadlInstance& inst,
                                                   int max_rule = 8);

// Dispatch a site found by find_applicable_rule.
RuleOutcome apply_rule_at(FadlInstance& inst, const ApplicableSite& site);

}  // namespace funnelkern
