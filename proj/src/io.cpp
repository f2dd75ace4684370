#include "funnelkern/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace funnelkern {

ParseError::ParseError(int line_, const std::string& msg)
    : std::runtime_error(
          line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
      line(line_) {}

namespace {

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream in(s);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

std::int64_t parse_int(const std::string& tok, int line, const char* what) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(line,
                         std::string("bad ") + what + " '" + tok + "'");
    return value;
}

Label parse_label(const std::string& tok, int line) {
    if (tok == "F") return Label::fork;
    if (tok == "M") return Label::merge;
    throw ParseError(line, "label must be F or M");
}

}  // namespace

ParsedInstance parse_instance(std::istream& in) {
    bool have_p = false;
    bool is_fads = true;
    int n = 0;
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::vector<Arc> arcs;
    std::vector<std::pair<VertexId, Label>> labels;
    std::vector<char> labeled;
    std::unordered_set<std::int64_t> seen;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& tag = toks[0];
        if (tag == "c") continue;
        if (tag == "p") {
            if (have_p) throw ParseError(lineno, "second p line");
            if (toks.size() != 5)
                throw ParseError(lineno, "p line needs: p <fads|fadl> <n> <m> <k>");
            if (toks[1] == "fads")
                is_fads = true;
            else if (toks[1] == "fadl")
                is_fads = false;
            else
                throw ParseError(lineno, "unknown format '" + toks[1] + "'");
            std::int64_t n64 = parse_int(toks[2], lineno, "vertex count");
            m = parse_int(toks[3], lineno, "arc count");
            k = parse_int(toks[4], lineno, "budget");
            if (n64 < 0 || n64 > 100000000)
                throw ParseError(lineno, "vertex count out of range");
            if (m < 0) throw ParseError(lineno, "negative arc count");
            if (k < 0) throw ParseError(lineno, "negative budget");
            n = static_cast<int>(n64);
            labeled.assign(n, 0);
            have_p = true;
            continue;
        }
        if (!have_p) throw ParseError(lineno, "p line must come first");
        if (tag == "l") {
            if (is_fads)
                throw ParseError(lineno, "label line in a fads instance");
            if (toks.size() != 3)
                throw ParseError(lineno, "l line needs: l <v> <F|M>");
            std::int64_t v = parse_int(toks[1], lineno, "vertex id");
            if (v < 1 || v > n)
                throw ParseError(lineno, "vertex id out of range");
            Label lab = parse_label(toks[2], lineno);
            if (labeled[v - 1])
                throw ParseError(lineno, "duplicate label for vertex " + toks[1]);
            labeled[v - 1] = 1;
            labels.emplace_back(static_cast<VertexId>(v - 1), lab);
            continue;
        }
        if (tag == "a") {
            if (toks.size() != 3)
                throw ParseError(lineno, "a line needs: a <u> <v>");
            std::int64_t u = parse_int(toks[1], lineno, "vertex id");
            std::int64_t v = parse_int(toks[2], lineno, "vertex id");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError(lineno, "vertex id out of range");
            if (u == v) throw ParseError(lineno, "self-loop");
            std::int64_t key = (u - 1) * static_cast<std::int64_t>(n) + (v - 1);
            if (!seen.insert(key).second)
                throw ParseError(lineno, "duplicate arc");
            arcs.push_back({static_cast<VertexId>(u - 1),
                            static_cast<VertexId>(v - 1)});
            continue;
        }
        throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
    if (!have_p) throw ParseError(0, "missing p line");
    if (static_cast<std::int64_t>(arcs.size()) != m)
        throw ParseError(0, "arc count mismatch: p line says " +
                                std::to_string(m) + ", file has " +
                                std::to_string(arcs.size()));

    Digraph g(n);
    for (const Arc& a : arcs) g.add_arc(a.tail, a.head);
    if (is_fads) return FadsInstance{std::move(g), k};
    FadlInstance inst;
    inst.graph = std::move(g);
    inst.labeling = Labeling(n);
    for (auto& [v, lab] : labels) inst.labeling.set(v, lab);
    inst.budget = k;
    return inst;
}

namespace {

void emit_core(std::ostream& out, const Digraph& g, const Labeling* labels,
               std::int64_t budget, bool fads) {
    std::vector<VertexId> live = g.vertices();
    std::vector<int> compact(g.capacity(), 0);
    for (std::size_t i = 0; i < live.size(); ++i)
        compact[live[i]] = static_cast<int>(i) + 1;
    out << "p " << (fads ? "fads" : "fadl") << ' ' << live.size() << ' '
        << g.arc_count() << ' ' << budget << '\n';
    if (labels)
        for (VertexId v : live)
            if (auto l = labels->get(v))
                out << "l " << compact[v] << ' '
                    << (*l == Label::fork ? 'F' : 'M') << '\n';
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(g.arc_count()));
    for (const Arc& a : g.arcs())
        arcs.push_back({compact[a.tail], compact[a.head]});
    std::sort(arcs.begin(), arcs.end());
    for (const Arc& a : arcs) out << "a " << a.tail << ' ' << a.head << '\n';
}

}  // namespace

void emit_instance(std::ostream& out, const FadsInstance& inst) {
    emit_core(out, inst.graph, nullptr, inst.budget, true);
}

void emit_instance(std::ostream& out, const FadlInstance& inst) {
    emit_core(out, inst.graph, &inst.labeling, inst.budget, false);
}

SolutionFile parse_solution(std::istream& in, int n) {
    SolutionFile sf;
    bool have_s = false;
    std::vector<char> labeled(n, 0);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& tag = toks[0];
        if (tag == "c") continue;
        if (tag == "s") {
            if (have_s) throw ParseError(lineno, "second s line");
            if (toks.size() != 2)
                throw ParseError(lineno, "s line needs: s <YES|NO|UNKNOWN>");
            if (toks[1] == "YES")
                sf.status = SolveStatus::yes;
            else if (toks[1] == "NO")
                sf.status = SolveStatus::no;
            else if (toks[1] == "UNKNOWN")
                sf.status = SolveStatus::unknown;
            else
                throw ParseError(lineno, "unknown status '" + toks[1] + "'");
            have_s = true;
            continue;
        }
        if (!have_s) throw ParseError(lineno, "s line must come first");
        if (tag == "d") {
            if (toks.size() != 3)
                throw ParseError(lineno, "d line needs: d <u> <v>");
            std::int64_t u = parse_int(toks[1], lineno, "vertex id");
            std::int64_t v = parse_int(toks[2], lineno, "vertex id");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError(lineno, "vertex id out of range");
            sf.deleted_arcs.push_back({static_cast<VertexId>(u - 1),
                                       static_cast<VertexId>(v - 1)});
            continue;
        }
        if (tag == "l") {
            if (toks.size() != 3)
                throw ParseError(lineno, "l line needs: l <v> <F|M>");
            std::int64_t v = parse_int(toks[1], lineno, "vertex id");
            if (v < 1 || v > n)
                throw ParseError(lineno, "vertex id out of range");
            Label lab = parse_label(toks[2], lineno);
            if (labeled[v - 1])
                throw ParseError(lineno, "duplicate label for vertex " + toks[1]);
            labeled[v - 1] = 1;
            sf.labels.emplace_back(static_cast<VertexId>(v - 1), lab);
            continue;
        }
        throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
    if (!have_s) throw ParseError(0, "missing s line");
    return sf;
}

void emit_solution(std::ostream& out, const SolutionFile& sol) {
    const char* s = sol.status == SolveStatus::yes
                        ? "YES"
                        : sol.status == SolveStatus::no ? "NO" : "UNKNOWN";
    out << "s " << s << '\n';
    std::vector<Arc> del = sol.deleted_arcs;
    std::sort(del.begin(), del.end());
    for (const Arc& a : del)
        out << "d " << a.tail + 1 << ' ' << a.head + 1 << '\n';
    auto labs = sol.labels;
    std::sort(labs.begin(), labs.end());
    for (auto& [v, lab] : labs)
        out << "l " << v + 1 << ' ' << (lab == Label::fork ? 'F' : 'M')
            << '\n';
}

void emit_dot(std::ostream& out, const Digraph& g, const Labeling* labels) {
    out << "digraph funnel {\n";
    for (VertexId v : g.vertices()) {
        out << "  v" << v + 1 << " [label=\"" << v + 1;
        if (labels) {
            if (auto l = labels->get(v))
                out << (*l == Label::fork ? " F" : " M");
        }
        out << "\"];\n";
    }
    for (const Arc& a : g.arcs())
        out << "  v" << a.tail + 1 << " -> v" << a.head + 1 << ";\n";
    out << "}\n";
}

}  // namespace funnelkern
