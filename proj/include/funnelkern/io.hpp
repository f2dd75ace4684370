#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "funnelkern/instance.hpp"
#include "funnelkern/solver.hpp"

namespace funnelkern {

// Instance files, one record per line, ids 1-based:
//   c <anything>            comment
//   p <fads|fadl> <n> <m> <k>
//   l <v> <F|M>             fadl only
//   a <u> <v>
// The p line comes first (comments aside); m must match the number of a
// lines; self-loops, duplicate arcs and duplicate labels are rejected.

struct ParseError : std::runtime_error {
    int line;  // 1-based; 0 for whole-file problems
    ParseError(int line_, const std::string& msg);
};

using ParsedInstance = std::variant<FadsInstance, FadlInstance>;

ParsedInstance parse_instance(std::istream& in);

// Writes a normalized file: live vertices renumbered to 1..n in id order,
// labels then arcs, everything sorted, no comments.
void emit_instance(std::ostream& out, const FadsInstance& inst);
void emit_instance(std::ostream& out, const FadlInstance& inst);

// Solution files:
//   s <YES|NO|UNKNOWN>
//   d <u> <v>               deleted arc
//   l <v> <F|M>             labeling of the surviving graph
struct SolutionFile {
    SolveStatus status = SolveStatus::no;
    std::vector<Arc> deleted_arcs;
    std::vector<std::pair<VertexId, Label>> labels;
};

// `n` bounds the vertex ids.
SolutionFile parse_solution(std::istream& in, int n);

void emit_solution(std::ostream& out, const SolutionFile& sol);

// Graphviz export; labels, when given, show up in the node text.
void emit_dot(std::ostream& out, const Digraph& g,
              const Labeling* labels = nullptr);

}  // namespace funnelkern
