#pragma once

// Text formats for graphs, elements and loop sums, and DOT export.
//
//   graph
//     vertex R; vertex B; vertex G
//     edge 0: R -> R; edge 1: B -> G; edge 2: B -> R; edge 3: G -> G; edge 4: G -> B
//     order R: [0]; order B: [1, 2]; order G: [3, 4]
//   base [B, G]
//
//   element
//     domain [B.1, B.2, G.3, G.4]
//     range  [G.3, G.4.2, G.4.1, B]
//
// A word is a root followed by edge names. When a vertex occurs more than
// once in the base, its roots are written Name@1, Name@2, ... in base order.

#include <string>
#include <string_view>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/forest_pair.hpp"
#include "shiftconj/graph.hpp"
#include "shiftconj/loops_semigroup.hpp"
#include "shiftconj/strand_diagram.hpp"

namespace shiftconj {

struct GraphFile {
  ShiftGraph graph;
  BaseTuple base;
};

// Throws ParseError with line and column.
GraphFile parse_graph(std::string_view text);
// Parses and validates; throws ParseError for syntax and unknown names, and
// InvalidInput naming the offending leaf for a malformed pair.
ForestPair parse_element(std::string_view text, const ShiftGraph& g, const BaseTuple& y);
// Sums such as "L(R,1)+2*L(B,1)".
LoopMultiset parse_loops(std::string_view text, const ShiftGraph& g);

std::string print_graph(const ShiftGraph& g, const BaseTuple& y);
std::string print_word(const ShiftGraph& g, const BaseTuple& y, const PathWord& w);
std::string print_element(const ShiftGraph& g, const ForestPair& fp);
std::string print_loops(const LoopMultiset& loops, const ShiftGraph& g);

std::string to_dot(const StrandDiagram& d, const ShiftGraph& g);
std::string to_dot(const ClosedDiagram& c, const ShiftGraph& g);

// Throws InvalidInput when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace shiftconj
