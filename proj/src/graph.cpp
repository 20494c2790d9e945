#include "shiftconj/graph.hpp"

#include <algorithm>
#include <functional>

#include "shiftconj/errors.hpp"

namespace shiftconj {

VertexId ShiftGraph::add_vertex(std::string name) {
  if (find_vertex(name)) {
    throw InvalidInput("duplicate vertex '" + name + "'");
  }
  vertex_names_.push_back(std::move(name));
  out_.emplace_back();
  return static_cast<VertexId>(vertex_names_.size() - 1);
}

EdgeId ShiftGraph::add_edge(std::string name, VertexId init, VertexId term) {
  if (find_edge(name)) {
    throw InvalidInput("duplicate edge '" + name + "'");
  }
  if (init < 0 || term < 0 || static_cast<std::size_t>(init) >= vertex_count() ||
      static_cast<std::size_t>(term) >= vertex_count()) {
    throw InvalidInput("edge '" + name + "' references an unknown vertex");
  }
  edges_.push_back(Edge{std::move(name), init, term});
  const auto id = static_cast<EdgeId>(edges_.size() - 1);
  out_[init].push_back(id);
  return id;
}

void ShiftGraph::set_out_order(VertexId v, std::vector<EdgeId> order) {
  auto current = out_.at(v);
  auto sorted = order;
  std::sort(current.begin(), current.end());
  std::sort(sorted.begin(), sorted.end());
  if (current != sorted) {
    throw InvalidInput("order of vertex '" + vertex_name(v) +
                       "' must list each outgoing edge exactly once");
  }
  out_[v] = std::move(order);
}

const std::string& ShiftGraph::vertex_name(VertexId v) const {
  return vertex_names_.at(v);
}

const Edge& ShiftGraph::edge(EdgeId e) const { return edges_.at(e); }

std::optional<VertexId> ShiftGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return static_cast<VertexId>(i);
  }
  return std::nullopt;
}

std::optional<EdgeId> ShiftGraph::find_edge(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return static_cast<EdgeId>(i);
  }
  return std::nullopt;
}

std::span<const EdgeId> ShiftGraph::out_edges(VertexId v) const {
  return out_.at(v);
}

std::vector<VertexId> ShiftGraph::child_colors(VertexId v) const {
  std::vector<VertexId> colors;
  for (EdgeId e : out_edges(v)) colors.push_back(edges_[e].term);
  return colors;
}

bool ShiftGraph::is_isolated(VertexId v) const {
  const auto out = out_edges(v);
  return out.size() == 1 && edges_[out[0]].term == v;
}

std::size_t ShiftGraph::edge_position(EdgeId e) const {
  const auto out = out_edges(edge(e).init);
  return static_cast<std::size_t>(std::find(out.begin(), out.end(), e) -
                                  out.begin());
}

PathWord PathWord::child(EdgeId e) const {
  PathWord w = *this;
  w.edges.push_back(e);
  return w;
}

bool PathWord::is_prefix_of(const PathWord& other) const {
  return root == other.root && edges.size() <= other.edges.size() &&
         std::equal(edges.begin(), edges.end(), other.edges.begin());
}

std::vector<GraphViolation> validate_graph(const ShiftGraph& g) {
  std::vector<GraphViolation> report;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto v = static_cast<VertexId>(i);
    const auto out = g.out_edges(v);
    if (out.empty()) {
      report.push_back({GraphViolation::Kind::DeadEnd, v,
                        "vertex '" + g.vertex_name(v) + "' has out-degree 0"});
    } else if (out.size() == 1 && g.edge(out[0]).term != v) {
      report.push_back({GraphViolation::Kind::RedundantEdge, v,
                        "vertex '" + g.vertex_name(v) +
                            "' has out-degree 1 and its edge is not a loop"});
    }
  }
  return report;
}

NormalizedGraph normalize_graph(const ShiftGraph& g, const BaseTuple& y) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> vertex_alive(n, true);
  std::vector<bool> edge_alive(g.edge_count(), true);
  std::vector<VertexId> term(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) term[e] = g.edge(e).term;

  auto alive_out = [&](VertexId v) {
    std::vector<EdgeId> out;
    for (EdgeId e : g.out_edges(v)) {
      if (edge_alive[e]) out.push_back(e);
    }
    return out;
  };

  // Dead-end removal. Removing a vertex also removes the edges entering it,
  // which can create new dead ends.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!vertex_alive[v] || !alive_out(static_cast<VertexId>(v)).empty()) {
        continue;
      }
      vertex_alive[v] = false;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (edge_alive[e] && term[e] == static_cast<VertexId>(v)) {
          edge_alive[e] = false;
        }
      }
      changed = true;
    }
  }

  // Contraction of redundant edges: v is identified with term(e).
  std::vector<VertexId> merged_into(n);
  for (std::size_t v = 0; v < n; ++v) merged_into[v] = static_cast<VertexId>(v);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!vertex_alive[v]) continue;
      const auto out = alive_out(static_cast<VertexId>(v));
      if (out.size() != 1 || term[out[0]] == static_cast<VertexId>(v)) continue;
      const VertexId target = term[out[0]];
      edge_alive[out[0]] = false;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (edge_alive[e] && term[e] == static_cast<VertexId>(v)) {
          term[e] = target;
        }
      }
      vertex_alive[v] = false;
      merged_into[v] = target;
      changed = true;
    }
  }

  NormalizedGraph result;
  std::vector<std::optional<VertexId>> new_id(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (vertex_alive[v]) {
      new_id[v] = result.graph.add_vertex(g.vertex_name(static_cast<VertexId>(v)));
    }
  }
  if (result.graph.vertex_count() == 0) {
    throw InvalidInput("normalization removed every vertex: the shift space is empty");
  }
  std::function<std::optional<VertexId>(std::size_t)> resolve =
      [&](std::size_t v) -> std::optional<VertexId> {
    if (vertex_alive[v]) return new_id[v];
    if (merged_into[v] == static_cast<VertexId>(v)) return std::nullopt;
    return resolve(static_cast<std::size_t>(merged_into[v]));
  };
  result.rename.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.rename[v] = resolve(v);

  std::vector<std::optional<EdgeId>> new_edge(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!edge_alive[e]) continue;
    const auto& old = g.edge(static_cast<EdgeId>(e));
    new_edge[e] = result.graph.add_edge(old.name, *new_id[old.init],
                                        *new_id[term[e]]);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!vertex_alive[v]) continue;
    std::vector<EdgeId> order;
    for (EdgeId e : g.out_edges(static_cast<VertexId>(v))) {
      if (new_edge[e]) order.push_back(*new_edge[e]);
    }
    result.graph.set_out_order(*new_id[v], std::move(order));
  }
  for (VertexId r : y.roots) {
    if (const auto mapped = result.rename.at(r)) result.base.roots.push_back(*mapped);
  }
  return result;
}

VertexId word_color(const ShiftGraph& g, const BaseTuple& y,
                    const PathWord& w) {
  if (w.edges.empty()) return y.roots.at(w.root);
  return g.edge(w.edges.back()).term;
}

bool is_valid_word(const ShiftGraph& g, const BaseTuple& y, const PathWord& w) {
  if (w.root >= y.size()) return false;
  VertexId at = y.roots[w.root];
  for (EdgeId e : w.edges) {
    if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count()) return false;
    if (g.edge(e).init != at) return false;
    at = g.edge(e).term;
  }
  return true;
}

std::vector<PathWord> children(const ShiftGraph& g, const BaseTuple& y,
                               const PathWord& w) {
  std::vector<PathWord> result;
  for (EdgeId e : g.out_edges(word_color(g, y, w))) result.push_back(w.child(e));
  return result;
}

bool is_isolated_cylinder(const ShiftGraph& g, const BaseTuple& y,
                          const PathWord& w) {
  return g.out_degree(word_color(g, y, w)) == 1;
}

PathWord canonical_cylinder(const ShiftGraph& g, const BaseTuple&,
                            const PathWord& w) {
  PathWord c = w;
  while (!c.edges.empty() && g.is_isolated(g.edge(c.edges.back()).init)) {
    c.edges.pop_back();
  }
  return c;
}

namespace {

void collect_words(const ShiftGraph& g, const BaseTuple& y, const PathWord& w,
                   std::size_t depth, bool exact, std::vector<PathWord>& out) {
  if (!exact || w.length() == depth) out.push_back(w);
  if (w.length() == depth) return;
  for (const auto& c : children(g, y, w)) collect_words(g, y, c, depth, exact, out);
}

}  // namespace

std::vector<PathWord> enumerate_words(const ShiftGraph& g, const BaseTuple& y,
                                      std::size_t depth) {
  std::vector<PathWord> out;
  for (std::size_t r = 0; r < y.size(); ++r) {
    collect_words(g, y, PathWord{r, {}}, depth, false, out);
  }
  return out;
}

std::vector<PathWord> words_of_length(const ShiftGraph& g, const BaseTuple& y,
                                      std::size_t depth) {
  std::vector<PathWord> out;
  for (std::size_t r = 0; r < y.size(); ++r) {
    collect_words(g, y, PathWord{r, {}}, depth, true, out);
  }
  return out;
}

}  // namespace shiftconj
