#pragma once

// Forest pair diagrams (F_D, f, F_R): the i-th domain leaf is sent to the
// i-th range leaf.

#include <string>
#include <vector>

#include "shiftconj/graph.hpp"

namespace shiftconj {

struct ForestPair {
  BaseTuple base;
  std::vector<PathWord> domain;
  std::vector<PathWord> range;

  bool operator==(const ForestPair&) const = default;
};

enum class Side { Domain, Range };

// Empty iff both leaf lists are leaf sets of complete rooted subforests and
// the pairing preserves colors.
std::vector<std::string> validate_forest_pair(const ShiftGraph& g,
                                              const ForestPair& fp);

ForestPair identity_forest_pair(const BaseTuple& y);
ForestPair invert_forest_pair(const ForestPair& fp);

// Replaces the domain prefix p of w by its image. Throws InvalidInput when w
// has no domain leaf as a prefix.
PathWord apply_to_word(const ShiftGraph& g, const ForestPair& fp,
                       const PathWord& w);

ForestPair expand_regular(const ShiftGraph& g, const ForestPair& fp,
                          std::size_t leaf);
// Regular reduction of the caret whose leaves occupy [first, first + k),
// k being the out-degree of the parent's color.
ForestPair reduce_regular(const ShiftGraph& g, const ForestPair& fp,
                          std::size_t first);
// Replaces a leaf pe by p, p an isolated cylinder.
ForestPair expand_degenerate(const ShiftGraph& g, const ForestPair& fp,
                             Side side, std::size_t leaf);
// Replaces an isolated leaf p by pe.
ForestPair reduce_degenerate(const ShiftGraph& g, const ForestPair& fp,
                             Side side, std::size_t leaf);

// f first, then h.
ForestPair compose_forest_pairs(const ShiftGraph& g, const ForestPair& f,
                                const ForestPair& h);

std::size_t max_leaf_length(const ForestPair& fp);

}  // namespace shiftconj
