#include "shiftconj/loops_semigroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "shiftconj/errors.hpp"

namespace shiftconj {

Presentation::Presentation(const ShiftGraph& g, std::size_t max_winding)
    : max_winding_(max_winding), vertices_(g.vertex_count()) {
  if (max_winding == 0) throw InvalidInput("the loops presentation needs N >= 1");
  for (std::size_t v = 0; v < vertices_; ++v) names_.push_back(g.vertex_name(static_cast<VertexId>(v)));
  for (std::size_t n = 1; n <= max_winding; ++n) {
    for (std::size_t v = 0; v < vertices_; ++v) {
      generators_.push_back({static_cast<VertexId>(v), n});
    }
  }
  for (std::size_t n = 1; n <= max_winding; ++n) {
    for (std::size_t v = 0; v < vertices_; ++v) {
      const auto c = static_cast<VertexId>(v);
      if (g.is_isolated(c)) continue;
      Relation r{LoopVector(generators_.size(), 0), LoopVector(generators_.size(), 0), c, n};
      for (VertexId child : g.child_colors(c)) ++r.lhs[index(child, n)];
      ++r.rhs[index(c, n)];
      relations_.push_back(std::move(r));
    }
  }
}

std::size_t Presentation::index(VertexId color, std::size_t winding) const {
  if (winding < 1 || winding > max_winding_ || color < 0 ||
      static_cast<std::size_t>(color) >= vertices_) {
    throw InvalidInput("loop L(" + std::to_string(color) + "," + std::to_string(winding) +
                       ") is outside the presentation");
  }
  return (winding - 1) * vertices_ + static_cast<std::size_t>(color);
}

LoopVector Presentation::to_vector(const LoopMultiset& loops) const {
  LoopVector v(generators_.size(), 0);
  for (const auto& [key, count] : loops) v[index(key.first, key.second)] += static_cast<unsigned>(count);
  return v;
}

LoopMultiset Presentation::to_multiset(const LoopVector& v) const {
  LoopMultiset out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out[{generators_[i].color, generators_[i].winding}] = v[i];
  }
  return out;
}

std::string Presentation::format(const LoopVector& v) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    if (!first) os << '+';
    first = false;
    if (v[i] > 1) os << v[i] << '*';
    os << "L(" << names_[generators_[i].color] << ',' << generators_[i].winding << ')';
  }
  if (first) os << '0';
  return os.str();
}

std::string Presentation::dump() const {
  std::ostringstream os;
  for (const auto& r : relations_) {
    std::string lhs;
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
      for (unsigned k = 0; k < r.lhs[i]; ++k) {
        if (!lhs.empty()) lhs += '+';
        lhs += "L(" + names_[generators_[i].color] + "," + std::to_string(generators_[i].winding) + ")";
      }
    }
    os << lhs << '=' << format(r.rhs) << '\n';
  }
  return os.str();
}

Presentation presentation_from_graph(const ShiftGraph& g, std::size_t max_winding) {
  return Presentation(g, max_winding);
}

std::size_t total_degree(const LoopVector& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

bool grlex_less(const LoopVector& a, const LoopVector& b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

bool divides(const LoopVector& a, const LoopVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool coprime(const LoopVector& a, const LoopVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

LoopVector rewrite(const LoopVector& w, const RewriteRule& r) {
  LoopVector out = w;
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = out[i] - r.lhs[i] + r.rhs[i];
  return out;
}

LoopVector reduce_with(LoopVector v, const std::vector<RewriteRule>& rules, std::size_t skip) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (i == skip || !divides(rules[i].lhs, v)) continue;
      v = rewrite(v, rules[i]);
      changed = true;
    }
  }
  return v;
}

std::optional<RewriteRule> orient(const LoopVector& a, const LoopVector& b) {
  if (a == b) return std::nullopt;
  return grlex_less(a, b) ? RewriteRule{b, a} : RewriteRule{a, b};
}

}  // namespace

CompletedSystem::CompletedSystem(const Presentation& p, std::size_t max_rules) {
  std::vector<RewriteRule> rules;
  for (const auto& r : p.relations()) {
    if (auto rule = orient(r.lhs, r.rhs)) rules.push_back(std::move(*rule));
  }
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < rules.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    const auto& a = rules[i];
    const auto& b = rules[j];
    if (coprime(a.lhs, b.lhs)) continue;
    LoopVector lcm(a.lhs.size());
    for (std::size_t k = 0; k < lcm.size(); ++k) lcm[k] = std::max(a.lhs[k], b.lhs[k]);
    const auto x = reduce_with(rewrite(lcm, a), rules, rules.size());
    const auto y = reduce_with(rewrite(lcm, b), rules, rules.size());
    if (auto rule = orient(x, y)) {
      if (rules.size() >= max_rules) {
        throw LimitExceeded("semigroup completion",
                            "completion exceeded " + std::to_string(max_rules) + " rules");
      }
      rules.push_back(std::move(*rule));
      for (std::size_t k = 0; k + 1 < rules.size(); ++k) pairs.emplace_back(k, rules.size() - 1);
    }
  }
  // Minimal, reduced basis.
  std::vector<bool> keep(rules.size(), true);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      if (divides(rules[j].lhs, rules[i].lhs) &&
          (rules[j].lhs != rules[i].lhs || j < i)) {
        keep[i] = false;
      }
    }
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (keep[i]) rules_.push_back(rules[i]);
  }
  for (auto& r : rules_) r.rhs = reduce_with(r.rhs, rules_, rules_.size());
}

LoopVector CompletedSystem::normal_form(LoopVector v) const {
  return reduce_with(std::move(v), rules_, rules_.size());
}

bool decide_equal(const LoopVector& a, const LoopVector& b, const Presentation& p) {
  if (a.size() != p.generator_count() || b.size() != p.generator_count()) {
    throw InvalidInput("loop vector does not match the presentation");
  }
  const CompletedSystem system(p);
  return system.normal_form(a) == system.normal_form(b);
}

bool decide_equal(const LoopMultiset& a, const LoopMultiset& b, const ShiftGraph& g) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  const Presentation p(g, std::max(max_winding(a), max_winding(b)));
  return decide_equal(p.to_vector(a), p.to_vector(b), p);
}

BfsOutcome bfs_equal(const LoopVector& a, const LoopVector& b, const Presentation& p,
                     std::size_t cap) {
  if (cap < total_degree(a) || cap < total_degree(b)) {
    throw InvalidInput("bfs cap is below the degree of an input");
  }
  BfsOutcome out;
  if (a == b) {
    out.equal = true;
    out.path = {a};
    return out;
  }
  std::map<LoopVector, LoopVector> parent_a{{a, a}};
  std::map<LoopVector, LoopVector> parent_b{{b, b}};
  std::deque<LoopVector> queue_a{a};
  std::deque<LoopVector> queue_b{b};

  auto neighbors = [&](const LoopVector& x) {
    std::vector<LoopVector> out_states;
    for (const auto& r : p.relations()) {
      for (int dir = 0; dir < 2; ++dir) {
        const auto& from = dir ? r.rhs : r.lhs;
        const auto& to = dir ? r.lhs : r.rhs;
        if (!divides(from, x)) continue;
        auto y = rewrite(x, RewriteRule{from, to});
        if (total_degree(y) <= cap) out_states.push_back(std::move(y));
      }
    }
    return out_states;
  };
  auto trace = [](const std::map<LoopVector, LoopVector>& parent, LoopVector x) {
    std::vector<LoopVector> path{x};
    while (parent.at(x) != x) {
      x = parent.at(x);
      path.push_back(x);
    }
    return path;
  };

  while (!queue_a.empty() || !queue_b.empty()) {
    const bool side_a = !queue_a.empty() && (queue_b.empty() || queue_a.size() <= queue_b.size());
    auto& queue = side_a ? queue_a : queue_b;
    auto& mine = side_a ? parent_a : parent_b;
    auto& theirs = side_a ? parent_b : parent_a;
    const std::size_t layer = queue.size();
    for (std::size_t step = 0; step < layer; ++step) {
      const LoopVector x = std::move(queue.front());
      queue.pop_front();
      ++out.explored;
      for (auto& y : neighbors(x)) {
        if (mine.count(y)) continue;
        mine.emplace(y, x);
        if (theirs.count(y)) {
          auto left = trace(parent_a, y);
          auto right = trace(parent_b, y);
          std::reverse(left.begin(), left.end());
          left.insert(left.end(), right.begin() + 1, right.end());
          out.equal = true;
          out.path = std::move(left);
          return out;
        }
        queue.push_back(std::move(y));
      }
    }
  }
  return out;
}

std::size_t max_winding(const LoopMultiset& loops) {
  if (loops.empty()) throw InvalidInput("max_winding of an empty loop multiset");
  std::size_t m = 0;
  for (const auto& [key, count] : loops) {
    if (count) m = std::max(m, key.second);
  }
  return m;
}

}  // namespace shiftconj
