#include "shiftconj/testkit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "shiftconj/errors.hpp"

namespace shiftconj::testkit {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void expand_at(const ShiftGraph& g, const BaseTuple& y, std::vector<PathWord>& leaves,
               std::size_t i) {
  const auto kids = children(g, y, leaves[i]);
  leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
  leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(i), kids.begin(), kids.end());
}

std::vector<std::size_t> expandable(const ShiftGraph& g, const BaseTuple& y,
                                    const std::vector<PathWord>& leaves, std::size_t max_depth,
                                    std::optional<VertexId> color) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto c = word_color(g, y, leaves[i]);
    if (g.is_isolated(c) || leaves[i].length() >= max_depth) continue;
    if (color && c != *color) continue;
    out.push_back(i);
  }
  return out;
}

}  // namespace

ForestPair random_element(const ShiftGraph& g, const BaseTuple& y, std::mt19937_64& rng,
                          const GeneratorConfig& cfg) {
  std::vector<PathWord> dom, ran;
  for (std::size_t i = 0; i < y.size(); ++i) {
    dom.push_back({i, {}});
    ran.push_back({i, {}});
  }
  const std::size_t target = uniform(rng, 0, cfg.max_expansions);
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < target && attempt < 4 * target + 4; ++attempt) {
    const auto ds = expandable(g, y, dom, cfg.max_depth, std::nullopt);
    if (ds.empty()) break;
    const auto d = ds[uniform(rng, 0, ds.size() - 1)];
    const auto c = word_color(g, y, dom[d]);
    const auto rs = expandable(g, y, ran, cfg.max_depth, c);
    if (rs.empty()) continue;
    const auto r = rs[uniform(rng, 0, rs.size() - 1)];
    expand_at(g, y, dom, d);
    expand_at(g, y, ran, r);
    ++done;
  }
  if (cfg.degenerate_probability > 0) {
    std::bernoulli_distribution pad(cfg.degenerate_probability);
    for (auto* side : {&dom, &ran}) {
      for (auto& w : *side) {
        const auto c = word_color(g, y, w);
        if (g.is_isolated(c) && pad(rng)) w.edges.push_back(g.out_edges(c)[0]);
      }
    }
  }
  std::map<VertexId, std::vector<std::size_t>> by_color;
  for (std::size_t i = 0; i < ran.size(); ++i) by_color[word_color(g, y, ran[i])].push_back(i);
  for (auto& [c, list] : by_color) std::shuffle(list.begin(), list.end(), rng);
  ForestPair fp;
  fp.base = y;
  fp.domain = dom;
  for (const auto& w : dom) {
    auto& list = by_color.at(word_color(g, y, w));
    fp.range.push_back(ran[list.back()]);
    list.pop_back();
  }
  return fp;
}

ForestPair random_element(const ShiftGraph& g, const BaseTuple& y, const GeneratorConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return random_element(g, y, rng, cfg);
}

RandomGraph random_graph(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  static const char* names[] = {"A", "B", "C", "D", "E", "F", "H", "J", "K", "M"};
  for (;;) {
    const std::size_t n = uniform(rng, 1, std::min<std::size_t>(cfg.max_vertices, 10));
    ShiftGraph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(names[v]);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto deg = uniform(rng, cfg.min_out, cfg.max_out);
      for (std::size_t k = 0; k < deg; ++k) {
        g.add_edge("e" + std::to_string(edges++), static_cast<VertexId>(v),
                   static_cast<VertexId>(uniform(rng, 0, n - 1)));
      }
    }
    BaseTuple y;
    const auto roots = uniform(rng, 1, 2);
    for (std::size_t i = 0; i < roots; ++i) y.roots.push_back(static_cast<VertexId>(uniform(rng, 0, n - 1)));
    NormalizedGraph norm;
    try {
      norm = normalize_graph(g, y);
    } catch (const InvalidInput&) {
      continue;
    }
    if (!validate_graph(norm.graph).empty() || norm.base.roots.empty()) continue;
    std::set<VertexId> seen(norm.base.roots.begin(), norm.base.roots.end());
    std::vector<VertexId> stack(seen.begin(), seen.end());
    bool branching = false;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      branching = branching || norm.graph.out_degree(v) >= 2;
      for (auto c : norm.graph.child_colors(v)) {
        if (seen.insert(c).second) stack.push_back(c);
      }
    }
    if (branching) return {norm.graph, norm.base};
  }
}

bool semantic_equal(const ShiftGraph& g, const ForestPair& f, const ForestPair& h,
                    std::size_t depth) {
  if (!(f.base == h.base)) return false;
  if (depth < max_leaf_length(f) || depth < max_leaf_length(h)) {
    throw InvalidInput("semantic_equal needs depth at least the longest leaf");
  }
  for (const auto& w : words_of_length(g, f.base, depth)) {
    if (canonical_cylinder(g, f.base, apply_to_word(g, f, w)) !=
        canonical_cylinder(g, h.base, apply_to_word(g, h, w))) {
      return false;
    }
  }
  return true;
}

bool semantic_equal(const ShiftGraph& g, const BaseTuple& y, const StrandDiagram& f,
                    const StrandDiagram& h) {
  const auto a = to_forest_pair(reduce(f), g, y);
  const auto b = to_forest_pair(reduce(h), g, y);
  return semantic_equal(g, a, b, std::max(max_leaf_length(a), max_leaf_length(b)));
}

std::vector<std::vector<PathWord>> enumerate_forests(const ShiftGraph& g, const BaseTuple& y,
                                                     std::size_t expansions) {
  std::vector<PathWord> roots;
  for (std::size_t i = 0; i < y.size(); ++i) roots.push_back({i, {}});
  std::set<std::vector<PathWord>> seen{roots};
  std::vector<std::vector<PathWord>> out{roots};
  std::vector<std::vector<PathWord>> layer{roots};
  for (std::size_t k = 0; k < expansions; ++k) {
    std::vector<std::vector<PathWord>> next;
    for (const auto& leaves : layer) {
      for (auto i : expandable(g, y, leaves, static_cast<std::size_t>(-1), std::nullopt)) {
        auto grown = leaves;
        expand_at(g, y, grown, i);
        if (seen.insert(grown).second) {
          out.push_back(grown);
          next.push_back(std::move(grown));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::optional<StrandDiagram> brute_conjugate(const ShiftGraph& graph, const BaseTuple& y,
                                             const StrandDiagram& f, const StrandDiagram& g,
                                             std::size_t expansions) {
  const auto forests = enumerate_forests(graph, y, expansions);
  auto colors = [&](const std::vector<PathWord>& leaves) {
    std::vector<VertexId> cs;
    for (const auto& w : leaves) cs.push_back(word_color(graph, y, w));
    return cs;
  };
  for (const auto& dom : forests) {
    auto dc = colors(dom);
    auto sorted_dc = dc;
    std::sort(sorted_dc.begin(), sorted_dc.end());
    for (const auto& ran : forests) {
      auto rc = colors(ran);
      std::sort(rc.begin(), rc.end());
      if (rc != sorted_dc) continue;
      const auto ran_colors = colors(ran);
      std::vector<bool> used(ran.size(), false);
      ForestPair fp{y, dom, std::vector<PathWord>(dom.size())};
      std::optional<StrandDiagram> found;
      std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (found) return;
        if (i == dom.size()) {
          auto h = from_forest_pair(graph, fp);
          if (equal(conjugate_by(h, g), f)) found = std::move(h);
          return;
        }
        for (std::size_t j = 0; j < ran.size() && !found; ++j) {
          if (used[j] || ran_colors[j] != dc[i]) continue;
          used[j] = true;
          fp.range[i] = ran[j];
          assign(i + 1);
          used[j] = false;
        }
      };
      assign(0);
      if (found) return found;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<std::size_t> front_permutation(const std::vector<PointId>& line,
                                           const std::vector<PointId>& front) {
  std::vector<std::size_t> perm;
  for (PointId p : front) {
    perm.push_back(static_cast<std::size_t>(std::find(line.begin(), line.end(), p) - line.begin()));
  }
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (std::find(front.begin(), front.end(), line[i]) == front.end()) perm.push_back(i);
  }
  return perm;
}

}  // namespace

std::vector<ClosedDiagram> shift_neighbors(const ClosedDiagram& c) {
  std::vector<ClosedDiagram> out;
  const auto& G = c.graph;
  for (std::size_t i = 0; i < c.base_line.size(); ++i) {
    for (auto dir : {ShiftThrough::Split, ShiftThrough::Merge}) {
      try {
        out.push_back(shift_expand(c, i, dir).first);
      } catch (const InvalidInput&) {
      }
    }
  }
  for (PointId p : G.live_points()) {
    const auto& pt = G.point(p);
    if (pt.base) continue;
    std::vector<PointId> block;
    if (pt.in.size() >= 2 && pt.out.size() == 1) {
      for (StrandId s : pt.in) block.push_back(G.strand(s).origin);
    } else if (pt.out.size() >= 2 && pt.in.size() == 1) {
      for (StrandId s : pt.out) block.push_back(G.strand(s).terminus);
    } else {
      continue;
    }
    if (!std::all_of(block.begin(), block.end(), [&](PointId q) { return G.point(q).base; })) {
      continue;
    }
    if (std::set<PointId>(block.begin(), block.end()).size() != block.size()) continue;
    try {
      const auto moved = permute_base(c, front_permutation(c.base_line, block)).first;
      out.push_back(shift_reduce(moved, 0, block.size()).first);
    } catch (const InvalidInput&) {
    }
  }
  return out;
}

bool brute_similar(const ClosedDiagram& a, const ClosedDiagram& b, std::size_t depth) {
  std::set<std::string> seen_a{similarity_key(a)};
  std::set<std::string> seen_b{similarity_key(b)};
  if (*seen_a.begin() == *seen_b.begin()) return true;
  std::vector<ClosedDiagram> front_a{a}, front_b{b};
  for (std::size_t step = 0; step < depth; ++step) {
    const bool grow_a = step % 2 == 0;
    auto& front = grow_a ? front_a : front_b;
    auto& mine = grow_a ? seen_a : seen_b;
    const auto& theirs = grow_a ? seen_b : seen_a;
    std::vector<ClosedDiagram> next;
    for (const auto& c : front) {
      for (auto& n : shift_neighbors(c)) {
        auto key = similarity_key(n);
        if (theirs.count(key)) return true;
        if (mine.insert(std::move(key)).second) next.push_back(std::move(n));
      }
    }
    front = std::move(next);
  }
  return false;
}

ClosedDiagram random_similar(const ClosedDiagram& c, std::size_t shifts, std::mt19937_64& rng) {
  ClosedDiagram x = c;
  for (std::size_t t = 0; t < shifts; ++t) {
    auto options = shift_neighbors(x);
    if (options.empty()) break;
    x = std::move(options[uniform(rng, 0, options.size() - 1)]);
  }
  std::vector<std::size_t> perm(x.base_line.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return permute_base(x, perm).first;
}

}  // namespace shiftconj::testkit
