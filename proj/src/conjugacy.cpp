#include "shiftconj/conjugacy.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "shiftconj/errors.hpp"

namespace shiftconj {

namespace {

std::size_t position(const std::vector<PointId>& line, PointId p) {
  const auto it = std::find(line.begin(), line.end(), p);
  if (it == line.end()) throw InvalidInput("point is not on the base line");
  return static_cast<std::size_t>(it - line.begin());
}

// perm for permute_base that moves `front` to the start of the line, in the
// given order, keeping the rest in place.
std::vector<std::size_t> front_permutation(const std::vector<PointId>& line,
                                           const std::vector<PointId>& front) {
  std::vector<std::size_t> perm;
  for (PointId p : front) perm.push_back(position(line, p));
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (std::find(front.begin(), front.end(), line[i]) == front.end()) perm.push_back(i);
  }
  return perm;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<std::size_t>> SplitMergeSkeleton::components() const {
  std::vector<int> comp(points.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < points.size(); ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      out.back().push_back(x);
      auto visit = [&](std::size_t y) {
        if (comp[y] < 0) {
          comp[y] = id;
          stack.push_back(y);
        }
      };
      for (auto c : points[x].out) visit(chains[c].terminus);
      for (auto c : points[x].in) visit(chains[c].origin);
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

SplitMergeSkeleton skeleton(const ClosedDiagram& part) {
  const auto& G = part.graph;
  SplitMergeSkeleton sk;
  std::map<PointId, std::size_t> index;
  for (PointId p : G.live_points()) {
    const auto& pt = G.point(p);
    if (pt.base) continue;
    const bool split = pt.in.size() == 1 && pt.out.size() >= 2;
    const bool merge = pt.in.size() >= 2 && pt.out.size() == 1;
    if (!split && !merge) {
      throw InvalidInput("point " + std::to_string(p) + " is neither a split nor a merge");
    }
    index[p] = sk.points.size();
    SkeletonPoint sp;
    sp.id = p;
    sp.color = pt.color;
    sp.split = split;
    sp.in.assign(pt.in.size(), 0);
    sk.points.push_back(std::move(sp));
  }
  for (std::size_t x = 0; x < sk.points.size(); ++x) {
    const auto& pt = G.point(sk.points[x].id);
    for (std::size_t j = 0; j < pt.out.size(); ++j) {
      SkeletonChain ch;
      ch.origin = x;
      ch.origin_slot = j;
      ch.color = G.strand(pt.out[j]).color;
      StrandId s = pt.out[j];
      for (;;) {
        const PointId t = G.strand(s).terminus;
        if (!G.point(t).base) {
          ch.terminus = index.at(t);
          const auto& in = G.point(t).in;
          ch.terminus_slot = static_cast<std::size_t>(std::find(in.begin(), in.end(), s) - in.begin());
          break;
        }
        ch.base_points.push_back(t);
        if (ch.base_points.size() > G.point_capacity()) throw InvalidInput("malformed chain");
        s = G.point(t).out[0];
      }
      sk.points[x].out.push_back(sk.chains.size());
      sk.points[ch.terminus].in[ch.terminus_slot] = sk.chains.size();
      sk.chains.push_back(std::move(ch));
    }
  }
  return sk;
}

namespace {

// Isomorphism of the component of `a` containing a_anchor onto the one of
// `b` containing b_anchor, or nullopt.
std::optional<std::map<std::size_t, std::size_t>> propagate(const SplitMergeSkeleton& a,
                                                            const SplitMergeSkeleton& b,
                                                            std::size_t a_anchor,
                                                            std::size_t b_anchor) {
  std::map<std::size_t, std::size_t> phi;
  std::map<std::size_t, std::size_t> inv;
  std::deque<std::size_t> queue;
  auto assign = [&](std::size_t x, std::size_t y) {
    const auto it = phi.find(x);
    if (it != phi.end()) return it->second == y;
    if (inv.count(y)) return false;
    phi[x] = y;
    inv[y] = x;
    queue.push_back(x);
    return true;
  };
  assign(a_anchor, b_anchor);
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    const auto& px = a.points[x];
    const auto& py = b.points[phi[x]];
    if (px.color != py.color || px.split != py.split || px.in.size() != py.in.size() ||
        px.out.size() != py.out.size()) {
      return std::nullopt;
    }
    for (std::size_t j = 0; j < px.out.size(); ++j) {
      const auto& ca = a.chains[px.out[j]];
      const auto& cb = b.chains[py.out[j]];
      if (ca.terminus_slot != cb.terminus_slot || !assign(ca.terminus, cb.terminus)) {
        return std::nullopt;
      }
    }
    for (std::size_t j = 0; j < px.in.size(); ++j) {
      const auto& ca = a.chains[px.in[j]];
      const auto& cb = b.chains[py.in[j]];
      if (ca.origin_slot != cb.origin_slot || !assign(ca.origin, cb.origin)) return std::nullopt;
    }
  }
  return phi;
}

struct ComponentMatch {
  std::map<std::size_t, std::size_t> phi;
  std::map<std::size_t, mpz_class> potential;
};

std::optional<ComponentMatch> match_component(const SplitMergeSkeleton& a,
                                              const std::vector<std::size_t>& ca,
                                              const SplitMergeSkeleton& b,
                                              const std::vector<std::size_t>& cb) {
  if (ca.size() != cb.size()) return std::nullopt;
  std::vector<std::size_t> chains;
  for (auto x : ca) {
    for (auto c : a.points[x].out) chains.push_back(c);
  }
  std::map<std::size_t, std::size_t> column;
  for (std::size_t i = 0; i < ca.size(); ++i) column[ca[i]] = i;

  const auto anchor = ca.front();
  for (auto candidate : cb) {
    auto phi = propagate(a, b, anchor, candidate);
    if (!phi || phi->size() != ca.size()) continue;
    IntMatrix M(chains.size(), ca.size());
    IntVector d(chains.size());
    for (std::size_t r = 0; r < chains.size(); ++r) {
      const auto& ch = a.chains[chains[r]];
      M(r, column.at(ch.origin)) += 1;
      M(r, column.at(ch.terminus)) -= 1;
      const auto image = b.points[phi->at(ch.origin)].out[ch.origin_slot];
      d[r] = static_cast<long>(b.cocycle(image)) - static_cast<long>(a.cocycle(chains[r]));
    }
    const auto sol = solve_integer(M, d);
    if (!sol.x) continue;
    ComponentMatch m;
    m.phi = std::move(*phi);
    const mpz_class low = *std::min_element(sol.x->begin(), sol.x->end());
    for (std::size_t i = 0; i < ca.size(); ++i) m.potential[ca[i]] = (*sol.x)[i] - low;
    return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<SplitMergeWitness> compare_split_merge(const SplitMergeSkeleton& a,
                                                     const SplitMergeSkeleton& b) {
  if (a.points.size() != b.points.size() || a.chains.size() != b.chains.size()) {
    return std::nullopt;
  }
  const auto comps_a = a.components();
  const auto comps_b = b.components();
  if (comps_a.size() != comps_b.size()) return std::nullopt;
  const std::size_t n = comps_a.size();

  std::vector<std::vector<std::optional<ComponentMatch>>> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i].push_back(match_component(a, comps_a[i], b, comps_b[j]));
    }
  }
  // Bipartite matching by augmenting paths.
  std::vector<int> owner(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t i, std::vector<bool>& seen) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!table[i][j] || seen[j]) continue;
          seen[j] = true;
          if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
            owner[j] = static_cast<int>(i);
            return true;
          }
        }
        return false;
      };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return std::nullopt;
  }
  SplitMergeWitness w;
  w.point_map.assign(a.points.size(), 0);
  w.potential.assign(a.points.size(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& m = *table[static_cast<std::size_t>(owner[j])][j];
    for (const auto& [x, y] : m.phi) w.point_map[x] = y;
    for (const auto& [x, v] : m.potential) w.potential[x] = v;
  }
  return w;
}

ConjugacyVerdict is_conjugate(const StrandDiagram& f, const StrandDiagram& g,
                              const ShiftGraph& graph, const ConjugacyOptions& options) {
  if (f.domain() != f.range() || g.domain() != g.range()) {
    throw InvalidInput("conjugacy needs diagrams with domain equal to range");
  }
  ConjugacyVerdict v;
  if (f.domain() != g.domain()) {
    v.step_failed = 0;
    v.reason = "the diagrams have different domain signatures";
    return v;
  }
  SemiReduceOptions sr;
  sr.budget = options.budget;
  sr.rng = options.rng;
  v.semi_f = semi_reduce(close(f), sr);
  v.semi_g = semi_reduce(close(g), sr);
  const auto parts_f = decompose_parts(v.semi_f.diagram);
  const auto parts_g = decompose_parts(v.semi_g.diagram);
  v.loops_f = parts_f.loops;
  v.loops_g = parts_g.loops;

  v.split_merge = compare_split_merge(skeleton(parts_g.split_merge), skeleton(parts_f.split_merge));
  if (!v.split_merge) {
    v.step_failed = 2;
    v.reason = "the split-merge parts are not similar";
    return v;
  }
  if (v.loops_f.empty() != v.loops_g.empty() ||
      (!v.loops_f.empty() && !decide_equal(v.loops_f, v.loops_g, graph))) {
    v.step_failed = 3;
    v.reason = "the loop parts are different elements of the loops semigroup";
    return v;
  }
  v.conjugate = true;
  if (options.witness) v.witness = conjugator_witness(f, g, graph, v, options.semigroup_cap);
  return v;
}

namespace {

struct Loop {
  VertexId color;
  std::vector<PointId> cycle;
};

std::vector<Loop> loops_of(const ClosedDiagram& c) {
  std::vector<Loop> out;
  for (const auto& comp : components(c.graph)) {
    if (!std::all_of(comp.begin(), comp.end(), [&](PointId p) { return c.graph.point(p).base; })) {
      continue;
    }
    Loop l{c.graph.point(comp[0]).color, {}};
    PointId at = comp[0];
    do {
      l.cycle.push_back(at);
      at = c.graph.strand(c.graph.point(at).out[0]).terminus;
    } while (at != comp[0]);
    out.push_back(std::move(l));
  }
  return out;
}

class WitnessBuilder {
 public:
  WitnessBuilder(const ClosedDiagram& start, const ShiftGraph& graph) : x_(start), graph_(graph) {
    trace_.initial_colors = start.colors();
  }

  void apply(std::pair<ClosedDiagram, Move> step) {
    x_ = std::move(step.first);
    trace_.moves.push_back(std::move(step.second));
  }

  void permute_to_front(const std::vector<PointId>& front) {
    const auto perm = front_permutation(x_.base_line, front);
    if (!is_identity(perm)) apply(permute_base(x_, perm));
  }

  // Greedy realization of the potential by forward pushes: a point of
  // maximal remaining potential whose in-chains all carry a base point
  // always exists because every cycle carries a base point.
  bool push(IntVector potential) {
    for (;;) {
      const auto sk = skeleton(x_);
      std::optional<std::size_t> pick;
      mpz_class best = 0;
      for (std::size_t i = 0; i < sk.points.size(); ++i) {
        if (potential[i] <= 0 || (pick && potential[i] < best)) continue;
        const auto& in = sk.points[i].in;
        if (std::any_of(in.begin(), in.end(), [&](std::size_t c) { return sk.cocycle(c) == 0; })) {
          continue;
        }
        if (!pick || potential[i] > best) {
          pick = i;
          best = potential[i];
        }
      }
      if (!pick) {
        return std::all_of(potential.begin(), potential.end(),
                           [](const mpz_class& p) { return p == 0; });
      }
      const auto& pt = sk.points[*pick];
      if (pt.split) {
        const PointId b = sk.chains[pt.in[0]].base_points.back();
        apply(shift_expand(x_, position(x_.base_line, b), ShiftThrough::Split));
      } else {
        std::vector<PointId> block;
        for (auto c : pt.in) block.push_back(sk.chains[c].base_points.back());
        permute_to_front(block);
        apply(shift_reduce(x_, 0, block.size()));
      }
      potential[*pick] -= 1;
    }
  }

  bool relation_step(const Relation& r, bool reduce) {
    const auto loops = loops_of(x_);
    std::vector<bool> used(loops.size(), false);
    auto take = [&](VertexId color) -> const Loop* {
      for (std::size_t i = 0; i < loops.size(); ++i) {
        if (!used[i] && loops[i].color == color && loops[i].cycle.size() == r.winding) {
          used[i] = true;
          return &loops[i];
        }
      }
      return nullptr;
    };
    if (reduce) {
      const auto kids = graph_.child_colors(r.vertex);
      std::vector<const Loop*> chosen;
      for (VertexId k : kids) {
        const Loop* l = take(k);
        if (!l) return false;
        chosen.push_back(l);
      }
      std::vector<PointId> front;
      for (std::size_t t = 0; t < r.winding; ++t) {
        for (const Loop* l : chosen) front.push_back(l->cycle[t]);
      }
      permute_to_front(front);
      apply(type3_reduce(x_, graph_, 0, kids.size(), r.winding, r.vertex));
    } else {
      const Loop* l = take(r.vertex);
      if (!l) return false;
      permute_to_front(l->cycle);
      apply(type3_expand(x_, graph_, 0, r.winding));
    }
    return true;
  }

  const ClosedDiagram& diagram() const { return x_; }
  const ConjugationTrace& trace() const { return trace_; }

 private:
  ClosedDiagram x_;
  const ShiftGraph& graph_;
  ConjugationTrace trace_;
};

bool follow_loop_path(WitnessBuilder& wb, const Presentation& p, const std::vector<LoopVector>& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool done = false;
    for (const auto& r : p.relations()) {
      for (int dir = 0; dir < 2 && !done; ++dir) {
        const auto& from = dir ? r.lhs : r.rhs;
        const auto& to = dir ? r.rhs : r.lhs;
        bool fits = true;
        for (std::size_t k = 0; k < from.size() && fits; ++k) {
          fits = path[i][k] >= from[k] && path[i][k] - from[k] + to[k] == path[i + 1][k];
        }
        if (!fits) continue;
        // dir 1 rewrites children into the parent.
        if (!wb.relation_step(r, dir == 1)) return false;
        done = true;
      }
      if (done) break;
    }
    if (!done) return false;
  }
  return true;
}

}  // namespace

std::optional<StrandDiagram> conjugator_witness(const StrandDiagram& f, const StrandDiagram& g,
                                                const ShiftGraph& graph,
                                                const ConjugacyVerdict& verdict,
                                                std::size_t semigroup_cap) {
  if (!verdict.conjugate || !verdict.split_merge) return std::nullopt;
  const auto& fs = verdict.semi_f.diagram;
  WitnessBuilder wb(verdict.semi_g.diagram, graph);

  if (!wb.push(verdict.split_merge->potential)) return std::nullopt;

  if (verdict.loops_f != verdict.loops_g) {
    const Presentation p(graph, std::max(max_winding(verdict.loops_f), max_winding(verdict.loops_g)));
    const auto a = p.to_vector(verdict.loops_g);
    const auto b = p.to_vector(verdict.loops_f);
    const auto cap = std::max({semigroup_cap, total_degree(a), total_degree(b)});
    const auto found = bfs_equal(a, b, p, cap);
    if (!found.equal || !follow_loop_path(wb, p, found.path)) return std::nullopt;
  }

  // Align base points with those of the semi-reduced f.
  const auto& x = wb.diagram();
  const auto sk_x = skeleton(x);
  const auto sk_f = skeleton(fs);
  std::map<PointId, PointId> to_x;
  const auto& phi = verdict.split_merge->point_map;
  for (std::size_t c = 0; c < sk_x.chains.size(); ++c) {
    const auto& ch = sk_x.chains[c];
    const auto& image = sk_f.chains[sk_f.points[phi[ch.origin]].out[ch.origin_slot]];
    if (image.base_points.size() != ch.base_points.size()) return std::nullopt;
    for (std::size_t i = 0; i < ch.base_points.size(); ++i) {
      to_x[image.base_points[i]] = ch.base_points[i];
    }
  }
  auto loops_x = loops_of(x);
  const auto loops_f = loops_of(fs);
  std::vector<bool> used(loops_x.size(), false);
  for (const auto& lf : loops_f) {
    bool matched = false;
    for (std::size_t i = 0; i < loops_x.size() && !matched; ++i) {
      if (used[i] || loops_x[i].color != lf.color || loops_x[i].cycle.size() != lf.cycle.size()) {
        continue;
      }
      used[i] = true;
      matched = true;
      for (std::size_t t = 0; t < lf.cycle.size(); ++t) to_x[lf.cycle[t]] = loops_x[i].cycle[t];
    }
    if (!matched) return std::nullopt;
  }
  if (to_x.size() != fs.base_line.size() || x.base_line.size() != fs.base_line.size()) {
    return std::nullopt;
  }
  std::vector<PointId> order;
  for (PointId p : fs.base_line) order.push_back(to_x.at(p));
  wb.permute_to_front(order);
  if (canonical_form(wb.diagram()) != canonical_form(fs)) return std::nullopt;

  const auto s = trace_conjugator(wb.trace(), graph);
  const auto hf = trace_conjugator(verdict.semi_f.trace, graph);
  const auto hg = trace_conjugator(verdict.semi_g.trace, graph);
  auto h = reduce(compose(invert(hf), compose(s, hg)));
  if (!equal(conjugate_by(h, g), f)) return std::nullopt;
  return h;
}

}  // namespace shiftconj
