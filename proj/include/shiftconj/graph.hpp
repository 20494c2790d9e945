#pragma once

// The finite graph defining an edge shift, the ordered multiset of roots, and
// finite paths (words) in the forest of paths.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftconj {

using VertexId = int;
using EdgeId = int;

struct Edge {
  std::string name;
  VertexId init = 0;
  VertexId term = 0;

  bool operator==(const Edge&) const = default;
};

// Vertices double as colors. Each vertex carries a fixed linear order of its
// outgoing edges; child i of a node of color v is reached through the i-th
// edge of that order.
class ShiftGraph {
 public:
  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, VertexId init, VertexId term);
  // Replaces the out-order of v; `order` must list each outgoing edge of v
  // exactly once.
  void set_out_order(VertexId v, std::vector<EdgeId> order);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_name(VertexId v) const;
  const Edge& edge(EdgeId e) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  std::span<const EdgeId> out_edges(VertexId v) const;
  std::size_t out_degree(VertexId v) const { return out_edges(v).size(); }
  // Colors term(e_1), ..., term(e_k) of the children of a v-colored node.
  std::vector<VertexId> child_colors(VertexId v) const;
  // True iff the out-star of v is a single self-loop.
  bool is_isolated(VertexId v) const;
  // Position of e in the out-order of init(e).
  std::size_t edge_position(EdgeId e) const;

  bool operator==(const ShiftGraph&) const = default;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
};

// A linear order of the multiset Y of roots; repetitions allowed.
struct BaseTuple {
  std::vector<VertexId> roots;

  std::size_t size() const { return roots.size(); }
  bool operator==(const BaseTuple&) const = default;
};

// A finite path starting at the root at position `root` of a BaseTuple.
struct PathWord {
  std::size_t root = 0;
  std::vector<EdgeId> edges;

  auto operator<=>(const PathWord&) const = default;
  bool operator==(const PathWord&) const = default;

  std::size_t length() const { return edges.size(); }
  PathWord child(EdgeId e) const;
  bool is_prefix_of(const PathWord& other) const;
};

struct GraphViolation {
  enum class Kind { DeadEnd, RedundantEdge };
  Kind kind;
  VertexId vertex;
  std::string message;
};

std::vector<GraphViolation> validate_graph(const ShiftGraph& g);

struct NormalizedGraph {
  ShiftGraph graph;
  BaseTuple base;
  // rename[old vertex] = new vertex, or nullopt when the vertex was removed
  // as a dead end.
  std::vector<std::optional<VertexId>> rename;
};

// Removes dead ends to a fixpoint, then contracts out-degree-1 non-loop edges
// to a fixpoint. Throws InvalidInput if no vertex survives.
NormalizedGraph normalize_graph(const ShiftGraph& g, const BaseTuple& y);

// Color of the last node of w: term of its last edge, or its root vertex.
VertexId word_color(const ShiftGraph& g, const BaseTuple& y,
                    const PathWord& w);
bool is_valid_word(const ShiftGraph& g, const BaseTuple& y, const PathWord& w);
std::vector<PathWord> children(const ShiftGraph& g, const BaseTuple& y,
                               const PathWord& w);
bool is_isolated_cylinder(const ShiftGraph& g, const BaseTuple& y,
                          const PathWord& w);
// Shortest word with the same cylinder: trailing self-loops of isolated
// vertices are dropped.
PathWord canonical_cylinder(const ShiftGraph& g, const BaseTuple& y,
                            const PathWord& w);
// All words of length <= depth, ordered by (root, out-order positions) in
// depth-first preorder.
std::vector<PathWord> enumerate_words(const ShiftGraph& g, const BaseTuple& y,
                                      std::size_t depth);
// All words of length exactly `depth`.
std::vector<PathWord> words_of_length(const ShiftGraph& g, const BaseTuple& y,
                                      std::size_t depth);

}  // namespace shiftconj
