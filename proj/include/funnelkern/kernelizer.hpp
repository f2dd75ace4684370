#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "funnelkern/instance.hpp"
#include "funnelkern/rules.hpp"

namespace funnelkern {

// One size bound checked against the reduced instance.
struct AuditCheck {
    std::string name;
    std::int64_t limit = 0;
    std::int64_t observed = 0;
    bool pass = false;
};

struct SizeAudit {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::int64_t both_degree_big = 0;  // vertices with in > 1 and out > 1
    std::int64_t unlabeled_count = 0;
    std::int64_t labeled_count = 0;
    std::vector<AuditCheck> checks;

    bool all_pass() const;
};

// Throws std::invalid_argument unless the instance is fully reduced.
SizeAudit size_audit(const FadlInstance& inst);

struct KernelOptions {
    // Upper bound on arc shifts; 0 picks one from the instance size.
    std::int64_t max_shift_steps = 0;
    bool collect_audit = true;
    // Re-scan all earlier rules before every vertex deletion. Slow; meant
    // for randomized cross-checks of the worklist bookkeeping.
    bool paranoid_rescan = false;
    // Called after every applied rule with the mutated instance and the
    // step's trace.
    std::function<void(const FadlInstance&, const RuleTrace&)> on_step;
};

struct KernelReport {
    bool trivial_no = false;
    std::optional<FadlInstance> kernel;  // absent iff trivial_no
    std::array<std::int64_t, 9> rule_counts{};  // indexed by rule id; [0] unused
    std::optional<SizeAudit> audit;
    double elapsed_seconds = 0.0;
    std::int64_t shift_steps = 0;
    // Applicable sites found by the closing full scans rather than the
    // worklist; nonzero values flag gaps in the incremental triggers.
    std::int64_t rescan_finds = 0;

    std::int64_t applied_total() const;
};

KernelReport kernelize(const FadlInstance& inst, const KernelOptions& opts = {});

// Fixed unsatisfiable instance emitted when reduction refutes the input:
// a center with two in-arcs and two out-arcs, budget 0.
FadlInstance canonical_no_instance();

struct FadsKernelResult {
    FadsInstance kernel;
    KernelReport report;
};

// Lift to labeled form, reduce, translate back through the degree gadget.
FadsKernelResult kernelize_fads(const FadsInstance& inst,
                                const KernelOptions& opts = {});

}  // namespace funnelkern
