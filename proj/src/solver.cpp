#include "funnelkern/solver.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "funnelkern/funnel.hpp"

namespace funnelkern {

namespace {

constexpr char side_fork = 0;
constexpr char side_merge = 1;
constexpr char lab_none = 0;
constexpr char lab_fork = 1;
constexpr char lab_merge = 2;

// Compact snapshot of the live part of a digraph, with CSR adjacency over arc
// indices. All solvers work on this to keep inner loops allocation free.
struct Compact {
    int n = 0;
    int m = 0;
    std::vector<VertexId> verts;          // compact -> original
    std::vector<int> of;                  // original -> compact, -1 when dead
    std::vector<std::array<int, 2>> arcs; // compact endpoints, sorted input order
    std::vector<int> out_start, out_arc;  // arcs leaving v
    std::vector<int> in_start, in_arc;    // arcs entering v
    std::vector<int> indeg, outdeg;       // full-graph degrees
    std::vector<char> plab;               // instance labeling on compact ids

    Compact(const Digraph& g, const Labeling& partial) {
        verts = g.vertices();
        n = static_cast<int>(verts.size());
        of.assign(g.capacity(), -1);
        for (int i = 0; i < n; ++i) of[verts[i]] = i;
        for (const Arc& a : g.arcs())
            arcs.push_back({of[a.tail], of[a.head]});
        m = static_cast<int>(arcs.size());
        out_start.assign(n + 1, 0);
        in_start.assign(n + 1, 0);
        for (auto& a : arcs) {
            ++out_start[a[0] + 1];
            ++in_start[a[1] + 1];
        }
        for (int v = 0; v < n; ++v) {
            out_start[v + 1] += out_start[v];
            in_start[v + 1] += in_start[v];
        }
        out_arc.resize(m);
        in_arc.resize(m);
        std::vector<int> op(out_start.begin(), out_start.end() - 1);
        std::vector<int> ip(in_start.begin(), in_start.end() - 1);
        for (int a = 0; a < m; ++a) {
            out_arc[op[arcs[a][0]]++] = a;
            in_arc[ip[arcs[a][1]]++] = a;
        }
        indeg.resize(n);
        outdeg.resize(n);
        for (int v = 0; v < n; ++v) {
            outdeg[v] = out_start[v + 1] - out_start[v];
            indeg[v] = in_start[v + 1] - in_start[v];
        }
        plab.assign(n, lab_none);
        for (int v = 0; v < n; ++v) {
            auto l = partial.get(verts[v]);
            if (l == Label::fork) plab[v] = lab_fork;
            if (l == Label::merge) plab[v] = lab_merge;
        }
    }

    bool acyclic() const {
        std::vector<int> deg(indeg);
        std::vector<int> q;
        for (int v = 0; v < n; ++v)
            if (deg[v] == 0) q.push_back(v);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int k = out_start[q[i]]; k < out_start[q[i] + 1]; ++k)
                if (--deg[arcs[out_arc[k]][1]] == 0)
                    q.push_back(arcs[out_arc[k]][1]);
        return static_cast<int>(q.size()) == n;
    }
};

// Scratch for feasibility of "graph minus a deletion mask": acyclicity plus
// the forced-region collision test. Buffers persist across calls.
struct FeasEval {
    const Compact& c;
    std::vector<int> deg;
    std::vector<int> queue;
    std::vector<char> mmark, fmark;

    explicit FeasEval(const Compact& cc) : c(cc) {}

    // labels: per compact vertex, lab_none / lab_fork / lab_merge
    bool feasible(const std::vector<char>& deleted, const std::vector<char>& labels) {
        deg.assign(c.n, 0);
        for (int a = 0; a < c.m; ++a)
            if (!deleted[a]) ++deg[c.arcs[a][1]];

        queue.clear();
        for (int v = 0; v < c.n; ++v)
            if (deg[v] == 0) queue.push_back(v);
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int k = c.out_start[queue[i]]; k < c.out_start[queue[i] + 1]; ++k) {
                int a = c.out_arc[k];
                if (!deleted[a] && --deg[c.arcs[a][1]] == 0)
                    queue.push_back(c.arcs[a][1]);
            }
        if (static_cast<int>(queue.size()) != c.n) return false;

        mmark.assign(c.n, 0);
        queue.clear();
        for (int v = 0; v < c.n; ++v) {
            int in = 0;
            for (int k = c.in_start[v]; k < c.in_start[v + 1]; ++k)
                if (!deleted[c.in_arc[k]]) ++in;
            if (in >= 2 || labels[v] == lab_merge) {
                mmark[v] = 1;
                queue.push_back(v);
            }
        }
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int k = c.out_start[queue[i]]; k < c.out_start[queue[i] + 1]; ++k) {
                int a = c.out_arc[k];
                int w = c.arcs[a][1];
                if (!deleted[a] && !mmark[w]) {
                    mmark[w] = 1;
                    queue.push_back(w);
                }
            }

        fmark.assign(c.n, 0);
        queue.clear();
        for (int v = 0; v < c.n; ++v) {
            int out = 0;
            for (int k = c.out_start[v]; k < c.out_start[v + 1]; ++k)
                if (!deleted[c.out_arc[k]]) ++out;
            if (out >= 2 || labels[v] == lab_fork) {
                fmark[v] = 1;
                queue.push_back(v);
            }
        }
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int k = c.in_start[queue[i]]; k < c.in_start[queue[i] + 1]; ++k) {
                int a = c.in_arc[k];
                int w = c.arcs[a][0];
                if (!deleted[a] && !fmark[w]) {
                    fmark[w] = 1;
                    queue.push_back(w);
                }
            }

        for (int v = 0; v < c.n; ++v)
            if (mmark[v] && fmark[v]) return false;
        return true;
    }

    // call right after a successful feasible(); merge side sits in mmark
    Labeling extract_labeling(int capacity) const {
        Labeling l(capacity);
        for (int v = 0; v < c.n; ++v)
            l.set(c.verts[v], mmark[v] ? Label::merge : Label::fork);
        return l;
    }
};

// Cost of a fixed complete labeling, without building digraph copies. One
// Tarjan pass restricted to same-side arcs yields the components of both
// sides at once; each side then keeps a spanning arc for every vertex except
// one root per component that no same-side arc enters (Fork side) or leaves
// (Merge side). On acyclic graphs components are singletons and the pass
// reduces to two degree scans.
struct SideCostEval {
    const Compact& c;
    bool dag;
    std::vector<int> comp, low, idx, it_pos;
    std::vector<int> tstack, frames;
    std::vector<char> onstack, has_in, has_out, comp_side;

    explicit SideCostEval(const Compact& cc) : c(cc), dag(cc.acyclic()) {}

    std::int64_t cost(const std::vector<char>& side) {
        std::int64_t mf = 0, f_internal = 0, m_internal = 0;
        for (int a = 0; a < c.m; ++a) {
            char st = side[c.arcs[a][0]], sh = side[c.arcs[a][1]];
            if (st == side_merge && sh == side_fork) ++mf;
            else if (st == side_fork && sh == side_fork) ++f_internal;
            else if (st == side_merge && sh == side_merge) ++m_internal;
        }

        int f_roots = 0, m_roots = 0;
        std::int64_t nf = 0, nm = 0;
        for (int v = 0; v < c.n; ++v) (side[v] == side_fork ? nf : nm) += 1;

        if (dag) {
            has_in.assign(c.n, 0);
            has_out.assign(c.n, 0);
            for (int a = 0; a < c.m; ++a) {
                int t = c.arcs[a][0], h = c.arcs[a][1];
                if (side[t] != side[h]) continue;
                has_in[h] = 1;
                has_out[t] = 1;
            }
            for (int v = 0; v < c.n; ++v) {
                if (side[v] == side_fork && !has_in[v]) ++f_roots;
                if (side[v] == side_merge && !has_out[v]) ++m_roots;
            }
        } else {
            int ncomp = scc_same_side(side);
            has_in.assign(ncomp, 0);
            has_out.assign(ncomp, 0);
            comp_side.resize(ncomp);
            for (int v = 0; v < c.n; ++v) comp_side[comp[v]] = side[v];
            for (int a = 0; a < c.m; ++a) {
                int t = c.arcs[a][0], h = c.arcs[a][1];
                if (side[t] != side[h] || comp[t] == comp[h]) continue;
                has_in[comp[h]] = 1;
                has_out[comp[t]] = 1;
            }
            for (int k = 0; k < ncomp; ++k) {
                if (comp_side[k] == side_fork && !has_in[k]) ++f_roots;
                if (comp_side[k] == side_merge && !has_out[k]) ++m_roots;
            }
        }
        return mf + (f_internal - (nf - f_roots)) + (m_internal - (nm - m_roots));
    }

    // iterative Tarjan over arcs whose endpoints share a side; fills comp
    int scc_same_side(const std::vector<char>& side) {
        comp.assign(c.n, -1);
        low.assign(c.n, 0);
        idx.assign(c.n, -1);
        it_pos.assign(c.n, 0);
        onstack.assign(c.n, 0);
        tstack.clear();
        frames.clear();
        int counter = 0, ncomp = 0;
        for (int root = 0; root < c.n; ++root) {
            if (idx[root] >= 0) continue;
            frames.push_back(root);
            while (!frames.empty()) {
                int v = frames.back();
                if (idx[v] < 0) {
                    idx[v] = low[v] = counter++;
                    onstack[v] = 1;
                    tstack.push_back(v);
                    it_pos[v] = c.out_start[v];
                }
                bool descended = false;
                while (it_pos[v] < c.out_start[v + 1]) {
                    int w = c.arcs[c.out_arc[it_pos[v]]][1];
                    ++it_pos[v];
                    if (side[w] != side[v]) continue;
                    if (idx[w] < 0) {
                        frames.push_back(w);
                        descended = true;
                        break;
                    }
                    if (onstack[w]) low[v] = std::min(low[v], idx[w]);
                }
                if (descended) continue;
                frames.pop_back();
                if (!frames.empty()) {
                    int u = frames.back();
                    if (side[u] == side[v]) low[u] = std::min(low[u], low[v]);
                }
                if (low[v] == idx[v]) {
                    while (true) {
                        int w = tstack.back();
                        tstack.pop_back();
                        onstack[w] = 0;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
            }
        }
        return ncomp;
    }
};

}  // namespace

bool is_valid_branching(const Digraph& g, const Branching& b) {
    std::vector<int> heads(g.capacity(), 0);
    auto sorted = b.arcs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (const Arc& a : sorted) {
        if (!g.is_live(a.tail) || !g.is_live(a.head) || !g.has_arc(a.tail, a.head))
            return false;
        if (++heads[a.head] > 1) return false;
    }
    // with in-degree at most one a cycle can only be a closed parent chain
    std::vector<VertexId> parent(g.capacity(), -1);
    for (const Arc& a : sorted) parent[a.head] = a.tail;
    std::vector<char> state(g.capacity(), 0);
    for (VertexId v : g.vertices()) {
        VertexId x = v;
        std::vector<VertexId> chain;
        while (x >= 0 && state[x] == 0) {
            state[x] = 1;
            chain.push_back(x);
            x = parent[x];
        }
        if (x >= 0 && state[x] == 1) return false;
        for (VertexId y : chain) state[y] = 2;
    }
    return true;
}

BranchingResult max_branching(const Digraph& g) {
    Compact c(g, Labeling(g.capacity()));
    SideCostEval scc(c);
    std::vector<char> all(c.n, side_fork);
    int ncomp = scc.scc_same_side(all);

    std::vector<std::vector<int>> members(ncomp);
    for (int v = 0; v < c.n; ++v) members[scc.comp[v]].push_back(v);

    // smallest entering arc per component, if any
    std::vector<int> entry(ncomp, -1);
    for (int a = 0; a < c.m; ++a) {
        int t = c.arcs[a][0], h = c.arcs[a][1];
        if (scc.comp[t] == scc.comp[h]) continue;
        int& e = entry[scc.comp[h]];
        if (e < 0 || std::make_pair(c.verts[c.arcs[a][0]], c.verts[c.arcs[a][1]]) <
                         std::make_pair(c.verts[c.arcs[e][0]], c.verts[c.arcs[e][1]]))
            e = a;
    }

    BranchingResult r;
    std::vector<char> seen(c.n, 0);
    std::vector<int> queue;
    for (int k = 0; k < ncomp; ++k) {
        int root;
        if (entry[k] >= 0) {
            root = c.arcs[entry[k]][1];
            r.branching.arcs.push_back(
                {c.verts[c.arcs[entry[k]][0]], c.verts[root]});
        } else {
            root = *std::min_element(members[k].begin(), members[k].end());
        }
        queue.clear();
        queue.push_back(root);
        seen[root] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int v = queue[i];
            for (int p = c.out_start[v]; p < c.out_start[v + 1]; ++p) {
                int w = c.arcs[c.out_arc[p]][1];
                if (scc.comp[w] != k || seen[w]) continue;
                seen[w] = 1;
                r.branching.arcs.push_back({c.verts[v], c.verts[w]});
                queue.push_back(w);
            }
        }
    }
    std::sort(r.branching.arcs.begin(), r.branching.arcs.end());
    r.size = static_cast<int>(r.branching.arcs.size());
    if (!is_valid_branching(g, r.branching))
        throw std::logic_error("constructed branching is invalid");
    return r;
}

LabelingCost cost_for_labeling(const Digraph& g, const Labeling& complete) {
    for (VertexId v : g.vertices())
        if (!complete.is_labeled(v))
            throw std::invalid_argument("cost evaluation needs a complete labeling");

    std::vector<VertexId> forks, merges;
    for (VertexId v : g.vertices())
        (complete.get(v) == Label::fork ? forks : merges).push_back(v);

    LabelingCost out;
    for (const Arc& a : g.arcs())
        if (complete.get(a.tail) == Label::merge &&
            complete.get(a.head) == Label::fork)
            out.deletions.push_back(a);

    Digraph fork_part = induced_subgraph(g, forks);
    BranchingResult fb = max_branching(fork_part);
    {
        std::vector<Arc> kept = fb.branching.arcs;
        std::sort(kept.begin(), kept.end());
        for (const Arc& a : fork_part.arcs())
            if (!std::binary_search(kept.begin(), kept.end(), a))
                out.deletions.push_back(a);
    }

    // the Merge side wants an in-forest, which is a branching of the reversal
    Digraph merge_part = induced_subgraph(g, merges);
    Digraph reversed(merge_part.capacity());
    for (const Arc& a : merge_part.arcs()) reversed.add_arc(a.head, a.tail);
    for (VertexId v = 0; v < merge_part.capacity(); ++v)
        if (!merge_part.is_live(v)) reversed.remove_vertex(v);
    BranchingResult mb = max_branching(reversed);
    {
        std::vector<Arc> kept;
        for (const Arc& a : mb.branching.arcs) kept.push_back({a.head, a.tail});
        std::sort(kept.begin(), kept.end());
        for (const Arc& a : merge_part.arcs())
            if (!std::binary_search(kept.begin(), kept.end(), a))
                out.deletions.push_back(a);
    }

    std::sort(out.deletions.begin(), out.deletions.end());
    out.cost = static_cast<std::int64_t>(out.deletions.size());
    return out;
}

SolveResult solve_bruteforce(const FadlInstance& inst, const SolveOptions& opts) {
    Compact c(inst.graph, inst.labeling);
    FeasEval eval(c);
    std::vector<char> deleted(c.m, 0);

    std::int64_t size_cap =
        opts.optimize ? c.m : std::min<std::int64_t>(inst.budget, c.m);
    for (std::int64_t s = 0; s <= std::max<std::int64_t>(size_cap, 0); ++s) {
        if (!opts.optimize && inst.budget < 0) break;
        std::vector<int> pick(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) pick[i] = i;
        bool more = s <= c.m;
        while (more) {
            for (int i : pick) deleted[i] = 1;
            bool ok = eval.feasible(deleted, c.plab);
            if (ok) {
                Solution sol;
                for (int i : pick)
                    sol.deleted_arcs.push_back(
                        {c.verts[c.arcs[i][0]], c.verts[c.arcs[i][1]]});
                sol.labeling = eval.extract_labeling(inst.graph.capacity());
                for (int i : pick) deleted[i] = 0;
                SolveResult r;
                if (opts.optimize) {
                    r.optimum = s;
                    r.status = s <= inst.budget ? SolveStatus::yes : SolveStatus::no;
                } else {
                    r.status = SolveStatus::yes;
                }
                if (r.status == SolveStatus::yes) r.solution = std::move(sol);
                return r;
            }
            for (int i : pick) deleted[i] = 0;
            int i = static_cast<int>(s) - 1;
            while (i >= 0 && pick[i] == c.m - static_cast<int>(s) + i) --i;
            if (i < 0) {
                more = false;
            } else {
                ++pick[i];
                for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if (opts.optimize)
        throw std::logic_error("exhausted subsets without a feasible deletion");
    return {SolveStatus::no, std::nullopt, std::nullopt};
}

SolveResult solve_labelings(const FadlInstance& inst, const SolveOptions&) {
    Compact c(inst.graph, inst.labeling);
    std::vector<int> free;  // compact ids of unlabeled vertices, ascending
    for (int v = 0; v < c.n; ++v)
        if (c.plab[v] == lab_none) free.push_back(v);
    if (free.size() >= 63)
        throw std::invalid_argument("too many unlabeled vertices to enumerate");

    SideCostEval eval(c);
    std::vector<char> side(c.n, side_fork);
    for (int v = 0; v < c.n; ++v)
        if (c.plab[v] == lab_merge) side[v] = side_merge;

    std::int64_t best = -1;
    std::uint64_t best_bits = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
        for (std::size_t i = 0; i < free.size(); ++i)
            side[free[i]] = (bits >> i) & 1 ? side_merge : side_fork;
        std::int64_t cost = eval.cost(side);
        if (best < 0 || cost < best) {
            best = cost;
            best_bits = bits;
        }
    }

    // rebuild the winner through the reference path, which also yields the arcs
    Labeling full(inst.graph.capacity());
    for (int v = 0; v < c.n; ++v)
        if (c.plab[v] != lab_none)
            full.set(c.verts[v], c.plab[v] == lab_fork ? Label::fork : Label::merge);
    for (std::size_t i = 0; i < free.size(); ++i)
        full.set(c.verts[free[i]],
                 (best_bits >> i) & 1 ? Label::merge : Label::fork);
    LabelingCost lc = cost_for_labeling(inst.graph, full);
    if (lc.cost != best)
        throw std::logic_error("cost evaluators disagree");

    SolveResult r;
    r.optimum = best;
    r.status = best <= inst.budget ? SolveStatus::yes : SolveStatus::no;
    if (r.status == SolveStatus::yes)
        r.solution = Solution{lc.deletions, std::move(full)};
    return r;
}

namespace {

// Branch and bound over completions of the instance labeling. The graph never
// changes; only labels do.
struct BnB {
    const Compact& c;
    const FadlInstance& inst;
    SolveOptions opts;
    SideCostEval cost_eval;
    FeasEval feas;
    std::vector<char> lab;
    std::vector<int> trail;  // vertices labeled on the way down
    std::vector<char> no_deletion;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    std::int64_t best = -1;
    std::vector<char> best_side;

    BnB(const Compact& cc, const FadlInstance& ii, const SolveOptions& oo)
        : c(cc), inst(ii), opts(oo), cost_eval(cc), feas(cc), lab(cc.plab),
          no_deletion(cc.m, 0) {}

    // labels are only forced when every still-interesting completion stays
    // within this bound
    std::int64_t forcing_bound() const {
        if (!opts.optimize) return inst.budget;
        return best < 0 ? std::numeric_limits<std::int64_t>::max() / 4 : best - 1;
    }

    std::int64_t excess() const {
        std::int64_t s = 0;
        for (int v = 0; v < c.n; ++v) {
            if (lab[v] == lab_merge && c.outdeg[v] > 1) s += c.outdeg[v] - 1;
            else if (lab[v] == lab_fork && c.indeg[v] > 1) s += c.indeg[v] - 1;
            else if (lab[v] == lab_none && c.indeg[v] > 1 && c.outdeg[v] > 1)
                s += std::min(c.indeg[v], c.outdeg[v]) - 1;
        }
        return s;
    }

    bool forced_fork(int v, std::int64_t bound) const {
        if (c.indeg[v] == 0) return true;
        if (c.indeg[v] == 1) {
            int p = c.arcs[c.in_arc[c.in_start[v]]][0];
            if (lab[p] == lab_fork) return true;
        }
        int good = 0;
        for (int k = c.out_start[v]; k < c.out_start[v + 1]; ++k) {
            int u = c.arcs[c.out_arc[k]][1];
            if (lab[u] == lab_merge || (lab[u] == lab_fork && c.indeg[u] == 1))
                ++good;
        }
        if (good >= c.indeg[v] + 1) return true;
        return c.outdeg[v] > bound + 1;
    }

    bool forced_merge(int v, std::int64_t bound) const {
        if (c.outdeg[v] == 0) return true;
        if (c.outdeg[v] == 1) {
            int s = c.arcs[c.out_arc[c.out_start[v]]][1];
            if (lab[s] == lab_merge) return true;
        }
        int good = 0;
        for (int k = c.in_start[v]; k < c.in_start[v + 1]; ++k) {
            int u = c.arcs[c.in_arc[k]][0];
            if (lab[u] == lab_fork || (lab[u] == lab_merge && c.outdeg[u] == 1))
                ++good;
        }
        if (good >= c.outdeg[v] + 1) return true;
        return c.indeg[v] > bound + 1;
    }

    void assign(int v, char l) {
        lab[v] = l;
        trail.push_back(v);
    }

    // fork conditions first, fixed sweep order, until stable
    void propagate() {
        std::int64_t bound = forcing_bound();
        bool moved = true;
        while (moved) {
            moved = false;
            for (int v = 0; v < c.n; ++v) {
                if (lab[v] != lab_none) continue;
                if (forced_fork(v, bound)) {
                    assign(v, lab_fork);
                    moved = true;
                } else if (forced_merge(v, bound)) {
                    assign(v, lab_merge);
                    moved = true;
                }
            }
        }
    }

    void record(std::int64_t cost, const std::vector<char>& side) {
        if (best < 0 || cost < best) {
            best = cost;
            best_side = side;
        }
    }

    // true requests an immediate full stop
    bool search() {
        if (++nodes > opts.node_budget) {
            out_of_budget = true;
            return true;
        }
        std::size_t mark = trail.size();
        propagate();

        std::int64_t lb = (excess() + 1) / 2;
        bool prune =
            opts.optimize ? (best >= 0 && lb >= best) : lb > inst.budget;
        if (!prune && cost_eval.dag && feas.feasible(no_deletion, lab)) {
            // a zero-cost completion extends the current partial labeling
            std::vector<char> side(c.n);
            for (int v = 0; v < c.n; ++v)
                side[v] = feas.mmark[v] ? side_merge : side_fork;
            record(0, side);
            unwind(mark);
            return true;
        }
        if (!prune) {
            int pick = -1, pick_score = -1;
            for (int v = 0; v < c.n; ++v)
                if (lab[v] == lab_none &&
                    std::min(c.indeg[v], c.outdeg[v]) > pick_score) {
                    pick_score = std::min(c.indeg[v], c.outdeg[v]);
                    pick = v;
                }
            if (pick < 0) {
                std::vector<char> side(c.n);
                for (int v = 0; v < c.n; ++v)
                    side[v] = lab[v] == lab_merge ? side_merge : side_fork;
                std::int64_t cost = cost_eval.cost(side);
                record(cost, side);
                if (cost == 0 || (!opts.optimize && best <= inst.budget)) {
                    unwind(mark);
                    return true;
                }
            } else {
                std::size_t post = trail.size();
                for (char l : {lab_fork, lab_merge}) {
                    assign(pick, l);
                    bool stop = search();
                    unwind(post);
                    if (stop) {
                        unwind(mark);
                        return true;
                    }
                }
            }
        }
        unwind(mark);
        return false;
    }

    void unwind(std::size_t mark) {
        while (trail.size() > mark) {
            lab[trail.back()] = lab_none;
            trail.pop_back();
        }
    }
};

}  // namespace

SolveResult solve_branch_and_bound(const FadlInstance& inst,
                                   const SolveOptions& opts) {
    Compact c(inst.graph, inst.labeling);
    BnB bnb(c, inst, opts);
    bnb.search();

    SolveResult r;
    bool found = bnb.best >= 0;
    if (found && bnb.best <= inst.budget) {
        r.status = SolveStatus::yes;
        Labeling full(inst.graph.capacity());
        for (int v = 0; v < c.n; ++v)
            full.set(c.verts[v],
                     bnb.best_side[v] == side_merge ? Label::merge : Label::fork);
        LabelingCost lc = cost_for_labeling(inst.graph, full);
        if (lc.cost != bnb.best)
            throw std::logic_error("cost evaluators disagree");
        r.solution = Solution{lc.deletions, std::move(full)};
    } else if (bnb.out_of_budget) {
        r.status = SolveStatus::unknown;
    } else {
        r.status = SolveStatus::no;
    }
    if (!bnb.out_of_budget && opts.optimize && found) r.optimum = bnb.best;
    return r;
}

}  // namespace funnelkern
