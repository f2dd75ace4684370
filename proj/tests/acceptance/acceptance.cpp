// End-to-end acceptance checks. Each criterion prints one pass/fail line;
// the exit code is the number of failed criteria. Where a criterion needs a
// tolerance (time limit, sample floor) the constant is pinned right here.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "funnelkern/digraph.hpp"
#include "funnelkern/funnel.hpp"
#include "funnelkern/generator.hpp"
#include "funnelkern/instance.hpp"
#include "funnelkern/io.hpp"
#include "funnelkern/kernelizer.hpp"
#include "funnelkern/rules.hpp"
#include "funnelkern/solver.hpp"
#include "support/fixtures.hpp"

using namespace funnelkern;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kSweepLimitSec = 60.0;
constexpr double kStepFuzzLimitSec = 600.0;
constexpr double kMediumKernelLimitSec = 10.0;   // n=10^4, m=10^5
constexpr double kLargeKernelLimitSec = 120.0;   // n=10^5, m=5*10^5
constexpr long kStepFuzzIters = 10000;
constexpr long kPipelineIters = 1000;
constexpr long kAgreementFloor = kStepFuzzIters + kPipelineIters;

const std::array<long, 5> kTinyFunnelCounts = {1, 1, 3, 25, 543};

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& msg) {
        pass = false;
        if (note.empty()) note = msg;
    }
};

// brute vs labelings tallies, filled by criteria 4 and 5, reported by 6
struct AgreeTally {
    long checked = 0;
    long mismatches = 0;
    std::string first_bad;
} agree;

void compare_engines(const FadlInstance& inst, const std::string& where) {
    SolveOptions opt;
    opt.optimize = true;
    SolveResult a = solve_bruteforce(inst, opt);
    SolveResult b = solve_labelings(inst, opt);
    ++agree.checked;
    bool same = a.status == b.status && a.optimum.has_value() &&
                b.optimum.has_value() && *a.optimum == *b.optimum;
    if (!same) {
        ++agree.mismatches;
        if (agree.first_bad.empty()) agree.first_bad = where;
    }
}

std::vector<Arc> ordered_pairs(int n) {
    std::vector<Arc> p;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) p.push_back({u, v});
    return p;
}

Digraph graph_of_mask(int n, const std::vector<Arc>& pairs,
                      std::uint32_t mask) {
    Digraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) g.add_arc(pairs[i].tail, pairs[i].head);
    return g;
}

bool witness_ok(const Digraph& g, const ForbiddenWitness& w) {
    if (w.path.empty()) return false;
    if (w.path.front() != w.merge_vertex) return false;
    if (w.path.back() != w.fork_vertex) return false;
    for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
        if (!g.has_arc(w.path[i], w.path[i + 1])) return false;
    if (w.in_pair[0] == w.in_pair[1]) return false;
    if (!g.has_arc(w.in_pair[0], w.merge_vertex)) return false;
    if (!g.has_arc(w.in_pair[1], w.merge_vertex)) return false;
    if (w.out_pair[0] == w.out_pair[1]) return false;
    if (!g.has_arc(w.fork_vertex, w.out_pair[0])) return false;
    if (!g.has_arc(w.fork_vertex, w.out_pair[1])) return false;
    return true;
}

bool decision(const FadlInstance& inst) {
    return solve_bruteforce(inst).status == SolveStatus::yes;
}

std::string fads_bytes(const FadsInstance& inst) {
    std::ostringstream s;
    emit_instance(s, inst);
    return s.str();
}

// 1: every digraph on up to four vertices, three independent recognition
// routes, certificates checked both ways, counts frozen
Outcome criterion_tiny_sweep() {
    Outcome o;
    auto t0 = Clock::now();
    for (int n = 0; n <= 4; ++n) {
        const std::vector<Arc> pairs = ordered_pairs(n);
        long count = 0;
        for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            Digraph g = graph_of_mask(n, pairs, mask);
            bool a = is_funnel(g);
            bool acyclic = is_acyclic(g);
            bool b = acyclic && !find_forbidden_witness(g).has_value();
            auto ext = has_labeling_extension(g, Labeling(n));
            if (a != b || a != ext.has_value()) {
                o.fail("routes disagree at n=" + std::to_string(n) +
                       " mask=" + std::to_string(mask));
                continue;
            }
            if (a) {
                ++count;
                if (!is_funnel_labeling(g, *ext))
                    o.fail("bad extension at n=" + std::to_string(n) +
                           " mask=" + std::to_string(mask));
            } else if (acyclic) {
                auto w = find_forbidden_witness(g);
                if (!w || !witness_ok(g, *w))
                    o.fail("bad witness at n=" + std::to_string(n) +
                           " mask=" + std::to_string(mask));
            }
        }
        if (count != kTinyFunnelCounts[n])
            o.fail("count at n=" + std::to_string(n) + " is " +
                   std::to_string(count) + ", expected " +
                   std::to_string(kTinyFunnelCounts[n]));
    }
    double el = secs_since(t0);
    if (el > kSweepLimitSec) o.fail("sweep took too long");
    if (o.pass) o.note = "counts 1 1 3 25 543";
    return o;
}

// 2: the stretched obstruction family always needs exactly one deletion
Outcome criterion_obstruction_family() {
    Outcome o;
    for (int k = 0; k <= 20; ++k) {
        Digraph g = gen_forbidden(k);
        if (is_funnel(g)) {
            o.fail("k=" + std::to_string(k) + " recognized as funnel");
            continue;
        }
        FadlInstance inst{g, Labeling(g.capacity()), 1};
        SolveOptions opt;
        opt.optimize = true;
        SolveResult brute = solve_bruteforce(inst, opt);
        SolveResult bnb = solve_branch_and_bound(inst, opt);
        if (!brute.optimum || *brute.optimum != 1)
            o.fail("brute optimum wrong at k=" + std::to_string(k));
        if (!bnb.optimum || *bnb.optimum != 1)
            o.fail("bnb optimum wrong at k=" + std::to_string(k));
        if (k <= 7) {
            SolveResult lab = solve_labelings(inst, opt);
            if (!lab.optimum || *lab.optimum != 1)
                o.fail("labelings optimum wrong at k=" + std::to_string(k));
        }
    }
    if (o.pass) o.note = "k = 0..20";
    return o;
}

// 3: the shared-path double obstruction costs exactly two, tightness shown
// by exhausting all single deletions, and the known certificate verifies
Outcome criterion_double_obstruction() {
    Outcome o;
    Digraph g = fixtures::needs_two();
    FadlInstance inst{g, Labeling(9), 2};
    SolveOptions opt;
    opt.optimize = true;
    SolveResult res = solve_bruteforce(inst, opt);
    if (res.status != SolveStatus::yes || !res.optimum || *res.optimum != 2)
        o.fail("optimum is not two");
    for (const Arc& a : g.arcs()) {
        std::vector<Arc> one{a};
        if (is_funnel(delete_arcs(g, one)))
            o.fail("single deletion suffices");
    }
    Solution sol;
    sol.deleted_arcs = {{1, 4}, {4, 5}};
    sol.labeling = Labeling(9);
    for (int v = 0; v <= 3; ++v) sol.labeling.set(v, Label::merge);
    for (int v = 4; v <= 8; ++v) sol.labeling.set(v, Label::fork);
    std::string reason;
    if (!verify_solution(inst, sol, &reason))
        o.fail("frozen certificate rejected: " + reason);
    if (o.pass) o.note = "optimum 2, all 8 single deletions fail";
    return o;
}

// 4: on a large seeded sample, one rule application preserves the labeled
// decision, and so does every step of a full reduction run
Outcome criterion_rule_steps() {
    Outcome o;
    auto t0 = Clock::now();
    SplitMix64 rng(20240);
    long steps = 0;
    for (long iter = 0; iter < kStepFuzzIters; ++iter) {
        FadlInstance inst = fixtures::random_instance(rng, 8, 14, 3);
        bool expect = decision(inst);
        compare_engines(inst, "step fuzz iter " + std::to_string(iter));

        FadlInstance single = inst;
        if (auto site = find_applicable_rule(single)) {
            RuleOutcome out = apply_rule_at(single, *site);
            if (out.kind == RuleKind::trivial_no) {
                if (expect)
                    o.fail("refutation of a yes at iter " +
                           std::to_string(iter));
            } else if (decision(single) != expect) {
                o.fail("one step flipped the answer at iter " +
                       std::to_string(iter) + " rule " +
                       std::to_string(site->rule));
            }
        }

        bool bad_step = false;
        KernelOptions ko;
        ko.on_step = [&](const FadlInstance& cur, const RuleTrace&) {
            ++steps;
            if (!bad_step && decision(cur) != expect) bad_step = true;
        };
        KernelReport rep = kernelize(inst, ko);
        if (bad_step)
            o.fail("driver step flipped the answer at iter " +
                   std::to_string(iter));
        if (rep.trivial_no) {
            if (expect) o.fail("driver refuted a yes at iter " +
                               std::to_string(iter));
        } else if (decision(*rep.kernel) != expect) {
            o.fail("kernel decision differs at iter " + std::to_string(iter));
        }
    }
    if (secs_since(t0) > kStepFuzzLimitSec) o.fail("fuzz took too long");
    if (o.pass)
        o.note = std::to_string(kStepFuzzIters) + " instances, " +
                 std::to_string(steps) + " steps";
    return o;
}

// 5: the plain-digraph pipeline (lift, reduce, translate back) preserves
// the decision on a seeded sample
Outcome criterion_pipeline() {
    Outcome o;
    SplitMix64 rng(50505);
    for (long iter = 0; iter < kPipelineIters; ++iter) {
        int n = 1 + static_cast<int>(rng.below(10));
        std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1);
        std::int64_t m = static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(std::min<std::int64_t>(20, cap)) + 1));
        FadsInstance inst{gen_random_digraph(n, m, rng),
                          static_cast<std::int64_t>(rng.below(4))};
        FadlInstance lifted = from_fads(inst);
        bool before = decision(lifted);
        compare_engines(lifted, "pipeline iter " + std::to_string(iter));
        FadsKernelResult res = kernelize_fads(inst);
        bool after = decision(from_fads(res.kernel));
        if (before != after)
            o.fail("decision changed at iter " + std::to_string(iter));
        if (res.report.rescan_finds != 0)
            o.fail("worklist missed a site at iter " + std::to_string(iter));
    }
    if (o.pass) o.note = std::to_string(kPipelineIters) + " instances";
    return o;
}

// 6: the two exponential engines agreed on status and optimum everywhere
// criteria 4 and 5 compared them
Outcome criterion_engines_agree() {
    Outcome o;
    if (agree.checked < kAgreementFloor)
        o.fail("only " + std::to_string(agree.checked) + " comparisons ran");
    if (agree.mismatches > 0)
        o.fail(std::to_string(agree.mismatches) + " mismatches, first at " +
               agree.first_bad);
    if (o.pass)
        o.note = std::to_string(agree.checked) + " optimize comparisons";
    return o;
}

// 7: planted instances across sizes reduce with every audit bound holding
Outcome criterion_planted_audits() {
    Outcome o;
    long audits = 0;
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng(5000 + i);
        int n = 60 + i * 19;  // up to 1941
        double ff = 0.3 + 0.2 * (i % 3);
        PlantedInstance planted =
            gen_planted(n, 2 * static_cast<std::int64_t>(n), i % 9, ff, rng);
        FadsKernelResult res = kernelize_fads(planted.instance);
        if (res.report.trivial_no) {
            o.fail("planted yes-instance refuted at i=" + std::to_string(i));
            continue;
        }
        if (!res.report.audit) {
            o.fail("audit missing at i=" + std::to_string(i));
            continue;
        }
        for (const AuditCheck& c : res.report.audit->checks) {
            ++audits;
            if (!c.pass || c.observed > c.limit)
                o.fail("bound '" + c.name + "' broken at i=" +
                       std::to_string(i));
        }
    }
    if (o.pass)
        o.note = "100 instances, " + std::to_string(audits) + " bounds";
    return o;
}

// 8: kernels admit no further rule, re-reduction changes nothing, and the
// fixed refutation instance round-trips
Outcome criterion_fixed_points() {
    Outcome o;
    SplitMix64 rng(60606);
    long kernels = 0;
    for (long iter = 0; iter < 300; ++iter) {
        FadlInstance inst = fixtures::random_instance(rng, 9, 16, 3);
        KernelReport rep = kernelize(inst);
        if (rep.trivial_no) continue;
        ++kernels;
        if (find_applicable_rule(*rep.kernel).has_value())
            o.fail("reducible kernel at iter " + std::to_string(iter));
        KernelReport again = kernelize(*rep.kernel);
        if (again.trivial_no || again.applied_total() != 0 ||
            !(*again.kernel == *rep.kernel))
            o.fail("re-reduction moved at iter " + std::to_string(iter));
    }
    SplitMix64 rng2(70707);
    for (long iter = 0; iter < 150; ++iter) {
        int n = 1 + static_cast<int>(rng2.below(10));
        std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1);
        FadsInstance inst{
            gen_random_digraph(
                n, static_cast<std::int64_t>(rng2.below(cap + 1)), rng2),
            static_cast<std::int64_t>(rng2.below(4))};
        FadsKernelResult res = kernelize_fads(inst);
        FadsKernelResult twice = kernelize_fads(res.kernel);
        if (fads_bytes(res.kernel) != fads_bytes(twice.kernel))
            o.fail("plain pipeline not idempotent at iter " +
                   std::to_string(iter));
        if (!res.report.trivial_no && res.report.kernel &&
            find_applicable_rule(*res.report.kernel).has_value())
            o.fail("reducible inner kernel at iter " + std::to_string(iter));
    }
    FadlInstance canon = canonical_no_instance();
    if (!kernelize(canon).trivial_no) o.fail("fixed no-instance not refuted");
    FadsKernelResult canon_res = kernelize_fads(FadsInstance{canon.graph, 0});
    if (!canon_res.report.trivial_no ||
        !(canon_res.kernel.graph == canon.graph))
        o.fail("fixed no-instance does not round-trip");
    if (o.pass) o.note = std::to_string(kernels) + " labeled kernels checked";
    return o;
}

// 9: reduction alone, timed, on three large inputs
Outcome criterion_throughput() {
    Outcome o;
    std::string times;
    {
        SplitMix64 rng(31337);
        Digraph g = gen_random_digraph(10000, 100000, rng);
        for (std::int64_t budget : {std::int64_t{3}, std::int64_t{100000}}) {
            FadsInstance inst{g, budget};
            auto t0 = Clock::now();
            FadsKernelResult res = kernelize_fads(inst);
            double el = secs_since(t0);
            times += (times.empty() ? "" : " ") + std::to_string(el).substr(0, 4) + "s";
            if (el > kMediumKernelLimitSec)
                o.fail("n=10^4 run with budget " + std::to_string(budget) +
                       " took " + std::to_string(el) + "s");
            (void)res;
        }
    }
    {
        SplitMix64 rng(424242);
        PlantedInstance planted = gen_planted(100000, 500000, 8, 0.5, rng);
        auto t0 = Clock::now();
        FadsKernelResult res = kernelize_fads(planted.instance);
        double el = secs_since(t0);
        times += " " + std::to_string(el).substr(0, 4) + "s";
        if (el > kLargeKernelLimitSec)
            o.fail("n=10^5 planted run took " + std::to_string(el) + "s");
        if (res.report.trivial_no) o.fail("n=10^5 planted run refuted");
    }
    if (o.pass) o.note = times;
    return o;
}

// 10: encoding labels through the degree gadget never changes the decision,
// exhaustively on up to three vertices and fuzzed a bit beyond
Outcome criterion_gadget() {
    Outcome o;
    long checked = 0;
    for (int n = 0; n <= 3; ++n) {
        const std::vector<Arc> pairs = ordered_pairs(n);
        long labelings = 1;
        for (int i = 0; i < n; ++i) labelings *= 3;
        for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            for (long code = 0; code < labelings; ++code) {
                Labeling lab(n);
                long c = code;
                for (int v = 0; v < n; ++v, c /= 3) {
                    if (c % 3 == 1) lab.set(v, Label::fork);
                    if (c % 3 == 2) lab.set(v, Label::merge);
                }
                for (std::int64_t k = 0; k <= 2; ++k) {
                    FadlInstance inst{graph_of_mask(n, pairs, mask), lab, k};
                    ++checked;
                    if (decision(inst) !=
                        decision(from_fads(to_fads(inst))))
                        o.fail("gadget flipped n=" + std::to_string(n) +
                               " mask=" + std::to_string(mask) +
                               " labels=" + std::to_string(code) +
                               " k=" + std::to_string(k));
                }
            }
        }
    }
    SplitMix64 rng(80808);
    for (long iter = 0; iter < 300; ++iter) {
        FadlInstance inst = fixtures::random_instance(rng, 6, 10, 2);
        ++checked;
        if (decision(inst) != decision(from_fads(to_fads(inst))))
            o.fail("gadget flipped fuzz iter " + std::to_string(iter));
    }
    if (o.pass) o.note = std::to_string(checked) + " instances";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> crits = {
        {"recognition routes agree on every tiny graph", criterion_tiny_sweep},
        {"stretched obstructions cost exactly one", criterion_obstruction_family},
        {"double obstruction fixture costs exactly two", criterion_double_obstruction},
        {"rule steps preserve the labeled decision", criterion_rule_steps},
        {"full pipeline preserves the plain decision", criterion_pipeline},
        {"independent solvers agree", criterion_engines_agree},
        {"planted reductions meet every size bound", criterion_planted_audits},
        {"kernels are irreducible fixed points", criterion_fixed_points},
        {"reduction finishes large inputs in time", criterion_throughput},
        {"degree gadget preserves the decision", criterion_gadget},
    };

    int failures = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = crits[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        double el = secs_since(t0);
        std::printf("%2zu/10 %-46s %s", i + 1, crits[i].first,
                    o.pass ? "pass" : "FAIL");
        if (!o.note.empty()) std::printf("  [%s]", o.note.c_str());
        std::printf("  (%.1fs)\n", el);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
