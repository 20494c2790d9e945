#include "shiftconj/forest_pair.hpp"

#include <algorithm>
#include <set>

#include "shiftconj/errors.hpp"

namespace shiftconj {

namespace {

std::set<PathWord> proper_prefixes(const std::vector<PathWord>& leaves) {
  std::set<PathWord> out;
  for (const auto& w : leaves) {
    PathWord p{w.root, {}};
    for (EdgeId e : w.edges) {
      out.insert(p);
      p.edges.push_back(e);
    }
  }
  return out;
}

void check_forest(const ShiftGraph& g, const BaseTuple& y,
                  const std::vector<PathWord>& leaves, const char* side,
                  std::vector<std::string>& report) {
  const std::set<PathWord> leaf_set(leaves.begin(), leaves.end());
  if (leaf_set.size() != leaves.size()) {
    report.push_back(std::string(side) + " leaves contain a duplicate");
  }
  const auto internal = proper_prefixes(leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (internal.count(leaves[i])) {
      report.push_back(std::string(side) + " leaf " + std::to_string(i) +
                       " is a prefix of another leaf");
    }
  }
  std::vector<PathWord> stack;
  for (std::size_t r = 0; r < y.size(); ++r) stack.push_back(PathWord{r, {}});
  while (!stack.empty()) {
    PathWord p = std::move(stack.back());
    stack.pop_back();
    if (leaf_set.count(p)) continue;
    if (!internal.count(p)) {
      report.push_back(std::string(side) + " forest is not complete below a node of length " +
                       std::to_string(p.length()) + " at root " + std::to_string(p.root));
      continue;
    }
    for (auto& c : children(g, y, p)) stack.push_back(std::move(c));
  }
}

}  // namespace

std::vector<std::string> validate_forest_pair(const ShiftGraph& g,
                                              const ForestPair& fp) {
  std::vector<std::string> report;
  if (fp.domain.size() != fp.range.size()) {
    report.push_back("domain and range have different numbers of leaves");
    return report;
  }
  for (std::size_t i = 0; i < fp.domain.size(); ++i) {
    if (!is_valid_word(g, fp.base, fp.domain[i])) {
      report.push_back("domain leaf " + std::to_string(i) + " is not a path");
    }
    if (!is_valid_word(g, fp.base, fp.range[i])) {
      report.push_back("range leaf " + std::to_string(i) + " is not a path");
    }
  }
  if (!report.empty()) return report;
  for (std::size_t i = 0; i < fp.domain.size(); ++i) {
    if (word_color(g, fp.base, fp.domain[i]) != word_color(g, fp.base, fp.range[i])) {
      report.push_back("pairing at leaf " + std::to_string(i) + " does not preserve colors");
    }
  }
  check_forest(g, fp.base, fp.domain, "domain", report);
  check_forest(g, fp.base, fp.range, "range", report);
  return report;
}

ForestPair identity_forest_pair(const BaseTuple& y) {
  ForestPair fp{y, {}, {}};
  for (std::size_t r = 0; r < y.size(); ++r) {
    fp.domain.push_back(PathWord{r, {}});
    fp.range.push_back(PathWord{r, {}});
  }
  return fp;
}

ForestPair invert_forest_pair(const ForestPair& fp) {
  return ForestPair{fp.base, fp.range, fp.domain};
}

PathWord apply_to_word(const ShiftGraph&, const ForestPair& fp,
                       const PathWord& w) {
  for (std::size_t i = 0; i < fp.domain.size(); ++i) {
    const auto& p = fp.domain[i];
    if (!p.is_prefix_of(w)) continue;
    PathWord image = fp.range[i];
    image.edges.insert(image.edges.end(), w.edges.begin() + p.edges.size(),
                       w.edges.end());
    return image;
  }
  throw InvalidInput("word has no domain leaf as a prefix; increase the depth");
}

ForestPair expand_regular(const ShiftGraph& g, const ForestPair& fp,
                          std::size_t leaf) {
  if (leaf >= fp.domain.size()) throw InvalidInput("leaf index out of range");
  ForestPair out = fp;
  const auto dom = children(g, fp.base, fp.domain[leaf]);
  const auto ran = children(g, fp.base, fp.range[leaf]);
  out.domain.erase(out.domain.begin() + leaf);
  out.range.erase(out.range.begin() + leaf);
  out.domain.insert(out.domain.begin() + leaf, dom.begin(), dom.end());
  out.range.insert(out.range.begin() + leaf, ran.begin(), ran.end());
  return out;
}

ForestPair reduce_regular(const ShiftGraph& g, const ForestPair& fp,
                          std::size_t first) {
  if (first >= fp.domain.size() || fp.domain[first].edges.empty() ||
      fp.range[first].edges.empty()) {
    throw InvalidInput("no caret starts at this leaf");
  }
  PathWord p = fp.domain[first];
  PathWord q = fp.range[first];
  p.edges.pop_back();
  q.edges.pop_back();
  const auto dom = children(g, fp.base, p);
  const auto ran = children(g, fp.base, q);
  if (first + dom.size() > fp.domain.size() ||
      !std::equal(dom.begin(), dom.end(), fp.domain.begin() + first) ||
      !std::equal(ran.begin(), ran.end(), fp.range.begin() + first)) {
    throw InvalidInput("leaves do not form a matching pair of carets");
  }
  ForestPair out = fp;
  out.domain.erase(out.domain.begin() + first, out.domain.begin() + first + dom.size());
  out.range.erase(out.range.begin() + first, out.range.begin() + first + ran.size());
  out.domain.insert(out.domain.begin() + first, p);
  out.range.insert(out.range.begin() + first, q);
  return out;
}

ForestPair expand_degenerate(const ShiftGraph& g, const ForestPair& fp,
                             Side side, std::size_t leaf) {
  ForestPair out = fp;
  auto& leaves = side == Side::Domain ? out.domain : out.range;
  if (leaf >= leaves.size()) throw InvalidInput("leaf index out of range");
  PathWord& w = leaves[leaf];
  if (w.edges.empty()) throw InvalidInput("a root leaf has no parent");
  PathWord p = w;
  p.edges.pop_back();
  if (!is_isolated_cylinder(g, fp.base, p)) {
    throw InvalidInput("degenerate expansion needs an isolated parent cylinder");
  }
  w = p;
  return out;
}

ForestPair reduce_degenerate(const ShiftGraph& g, const ForestPair& fp,
                             Side side, std::size_t leaf) {
  ForestPair out = fp;
  auto& leaves = side == Side::Domain ? out.domain : out.range;
  if (leaf >= leaves.size()) throw InvalidInput("leaf index out of range");
  if (!is_isolated_cylinder(g, fp.base, leaves[leaf])) {
    throw InvalidInput("degenerate reduction needs an isolated leaf");
  }
  leaves[leaf] = children(g, fp.base, leaves[leaf]).front();
  return out;
}

ForestPair compose_forest_pairs(const ShiftGraph& g, const ForestPair& f,
                                const ForestPair& h) {
  if (!(f.base == h.base)) throw InvalidInput("forest pairs over different bases");
  auto internal = proper_prefixes(f.range);
  internal.merge(proper_prefixes(h.domain));

  ForestPair fe = f;
  for (std::size_t i = 0; i < fe.range.size();) {
    if (internal.count(fe.range[i])) {
      fe = expand_regular(g, fe, i);
    } else {
      ++i;
    }
  }
  ForestPair he = h;
  for (std::size_t i = 0; i < he.domain.size();) {
    if (internal.count(he.domain[i])) {
      he = expand_regular(g, he, i);
    } else {
      ++i;
    }
  }
  ForestPair out{f.base, fe.domain, {}};
  for (const auto& q : fe.range) {
    const auto it = std::find(he.domain.begin(), he.domain.end(), q);
    if (it == he.domain.end()) {
      throw InvalidInput("forest pairs could not be brought to a common forest");
    }
    out.range.push_back(he.range[it - he.domain.begin()]);
  }
  return out;
}

std::size_t max_leaf_length(const ForestPair& fp) {
  std::size_t m = 0;
  for (const auto& w : fp.domain) m = std::max(m, w.length());
  for (const auto& w : fp.range) m = std::max(m, w.length());
  return m;
}

}  // namespace shiftconj
