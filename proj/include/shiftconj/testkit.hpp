#pragma once

// Oracles and random instances. Nothing here calls the conjugacy pipeline:
// equality is checked pointwise on cylinders, conjugators by enumeration and
// similarity by breadth-first search over base line moves.

#include <cstdint>
#include <optional>
#include <random>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/forest_pair.hpp"
#include "shiftconj/graph.hpp"
#include "shiftconj/strand_diagram.hpp"

namespace shiftconj::testkit {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  // Paired caret expansions applied to the identity forest pair.
  std::size_t max_expansions = 4;
  std::size_t max_depth = 4;
  // Probability of padding a leaf of an isolated color with its self-loop.
  double degenerate_probability = 0.0;
  // Random graphs.
  std::size_t max_vertices = 5;
  std::size_t min_out = 1;
  std::size_t max_out = 3;
};

// Domain and range forests grow by expanding leaves of the same color at
// independently chosen positions, then leaves are paired by a random
// color-preserving bijection.
ForestPair random_element(const ShiftGraph& g, const BaseTuple& y, std::mt19937_64& rng,
                          const GeneratorConfig& cfg);
ForestPair random_element(const ShiftGraph& g, const BaseTuple& y, const GeneratorConfig& cfg);

struct RandomGraph {
  ShiftGraph graph;
  BaseTuple base;
};
// A normalized graph whose base reaches a vertex of out-degree >= 2.
RandomGraph random_graph(std::mt19937_64& rng, const GeneratorConfig& cfg);

// Pointwise comparison on all words of length `depth`.
bool semantic_equal(const ShiftGraph& g, const ForestPair& f, const ForestPair& h,
                    std::size_t depth);
// Same, for group element diagrams over y at a depth covering both.
bool semantic_equal(const ShiftGraph& g, const BaseTuple& y, const StrandDiagram& f,
                    const StrandDiagram& h);

// Complete subforests of the forest of paths over y reachable by at most
// `expansions` caret expansions, as ordered leaf lists.
std::vector<std::vector<PathWord>> enumerate_forests(const ShiftGraph& g, const BaseTuple& y,
                                                     std::size_t expansions);

// The first h over forests of at most `expansions` carets with
// equal(conjugate_by(h, g), f), in a fixed enumeration order.
std::optional<StrandDiagram> brute_conjugate(const ShiftGraph& graph, const BaseTuple& y,
                                             const StrandDiagram& f, const StrandDiagram& g,
                                             std::size_t expansions);

// All closed diagrams one shift away from c, base order ignored.
std::vector<ClosedDiagram> shift_neighbors(const ClosedDiagram& c);

// Bidirectional search over shifts, with base line permutations free.
// True iff b is reached from a within `depth` shifts.
bool brute_similar(const ClosedDiagram& a, const ClosedDiagram& b, std::size_t depth);

// Up to `shifts` random shifts and a final random base line permutation.
ClosedDiagram random_similar(const ClosedDiagram& c, std::size_t shifts, std::mt19937_64& rng);

}  // namespace shiftconj::testkit
