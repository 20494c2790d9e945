#include "shiftconj/closed_diagram.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "shiftconj/errors.hpp"

namespace shiftconj {

namespace {

bool split_like(const DiagramPoint& pt) {
  return !pt.base && pt.out.size() >= 2 && pt.in.size() <= 1;
}

bool merge_like(const DiagramPoint& pt) {
  return !pt.base && pt.in.size() >= 2 && pt.out.size() <= 1;
}

std::size_t position(const std::vector<PointId>& line, PointId p) {
  const auto it = std::find(line.begin(), line.end(), p);
  if (it == line.end()) throw InvalidInput("point is not on the base line");
  return static_cast<std::size_t>(it - line.begin());
}

}  // namespace

std::vector<VertexId> ClosedDiagram::colors() const {
  std::vector<VertexId> out;
  for (PointId p : base_line) out.push_back(graph.point(p).color);
  return out;
}

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::ShiftExpand: return "shift-expand";
    case MoveKind::ShiftReduce: return "shift-reduce";
    case MoveKind::Permute: return "permute";
    case MoveKind::Reduce0: return "reduce-0";
    case MoveKind::Reduce1: return "reduce-1";
    case MoveKind::Reduce2: return "reduce-2";
    case MoveKind::Type3Reduce: return "reduce-3";
    case MoveKind::Type3Expand: return "expand-3";
  }
  return "unknown";
}

std::vector<std::string> validate_closed_diagram(const ClosedDiagram& c,
                                                 const ShiftGraph& g) {
  std::vector<std::string> report;
  std::set<PointId> on_line(c.base_line.begin(), c.base_line.end());
  if (on_line.size() != c.base_line.size()) report.push_back("a base point is listed twice");
  for (PointId p : c.graph.live_points()) {
    const auto& pt = c.graph.point(p);
    if (pt.base != (on_line.count(p) == 1)) {
      report.push_back("point " + std::to_string(p) + " disagrees with the base line");
    }
    if (pt.base) {
      if (pt.in.size() != 1 || pt.out.size() != 1 ||
          c.graph.strand(pt.in[0]).color != pt.color ||
          c.graph.strand(pt.out[0]).color != pt.color) {
        report.push_back("base point " + std::to_string(p) + " is malformed");
      }
    } else if (pt.in.empty() || pt.out.empty()) {
      report.push_back("point " + std::to_string(p) + " is a source or sink");
    }
  }
  if (!report.empty()) return report;
  for (auto& line : validate_strand_diagram(cut(c), g)) report.push_back("cut: " + line);
  return report;
}

ClosedDiagram close(const StrandDiagram& d) {
  if (d.domain() != d.range()) throw InvalidInput("cannot close: domain and range differ");
  ClosedDiagram c;
  c.graph = d.graph;
  auto& G = c.graph;
  for (std::size_t i = 0; i < d.sources.size(); ++i) {
    const PointId t = d.sinks[i];
    const PointId u = d.sources[i];
    const VertexId color = G.point(t).color;
    const PointId b = G.add_point(color, true);
    if (G.point(t).in.size() == 1) {
      const StrandId s = G.point(t).in[0];
      G.strand(s).terminus = b;
      G.point(b).in.assign(1, s);
      G.kill_point(t);
    } else {
      G.add_strand(t, b, color);
    }
    if (G.point(u).out.size() == 1) {
      const StrandId s = G.point(u).out[0];
      G.strand(s).origin = b;
      G.point(b).out.assign(1, s);
      G.kill_point(u);
    } else {
      G.add_strand(b, u, color);
    }
    c.base_line.push_back(b);
  }
  return c;
}

StrandDiagram cut(const ClosedDiagram& c) {
  StrandDiagram d;
  d.graph = c.graph;
  auto& G = d.graph;
  for (PointId b : c.base_line) {
    const StrandId s_in = G.point(b).in.at(0);
    const StrandId s_out = G.point(b).out.at(0);
    const VertexId color = G.point(b).color;
    const PointId x = G.strand(s_in).origin;
    const PointId y = G.strand(s_out).terminus;
    G.kill_point(b);
    if (s_in != s_out && merge_like(G.point(x)) && G.point(x).out.size() == 1) {
      G.kill_strand(s_in);
      G.point(x).out.clear();
      d.sinks.push_back(x);
    } else {
      const PointId t = G.add_point(color);
      G.strand(s_in).terminus = t;
      G.point(t).in.assign(1, s_in);
      d.sinks.push_back(t);
    }
    if (s_in != s_out && split_like(G.point(y)) && G.point(y).in.size() == 1) {
      G.kill_strand(s_out);
      G.point(y).in.clear();
      d.sources.push_back(y);
    } else {
      const PointId u = G.add_point(color);
      G.strand(s_out).origin = u;
      G.point(u).out.assign(1, s_out);
      d.sources.push_back(u);
    }
  }
  return d;
}

namespace {

Move shift_expand_in_place(ClosedDiagram& c, std::size_t index,
                           std::optional<ShiftThrough> through) {
  auto& G = c.graph;
  if (index >= c.base_line.size()) throw InvalidInput("base point index out of range");
  Move m;
  m.kind = MoveKind::ShiftExpand;
  m.index = index;
  m.colors_before = c.colors();
  const PointId b = c.base_line[index];
  const StrandId s_in = G.point(b).in[0];
  const StrandId s_out = G.point(b).out[0];
  const PointId x = G.strand(s_in).origin;
  const PointId y = G.strand(s_out).terminus;
  const bool can_split = split_like(G.point(y)) && G.point(y).in.size() == 1;
  const bool can_merge = merge_like(G.point(x)) && G.point(x).out.size() == 1;
  ShiftThrough dir;
  if (through) {
    dir = *through;
    if ((dir == ShiftThrough::Split && !can_split) || (dir == ShiftThrough::Merge && !can_merge)) {
      throw InvalidInput("no split below / merge above this base point");
    }
  } else if (can_split) {
    dir = ShiftThrough::Split;
  } else if (can_merge) {
    dir = ShiftThrough::Merge;
  } else {
    throw InvalidInput("base point is not next to a split or a merge");
  }
  G.join(s_in, s_out);
  G.kill_point(b);
  std::vector<PointId> fresh;
  if (dir == ShiftThrough::Split) {
    const auto outs = G.point(y).out;
    for (StrandId s : outs) fresh.push_back(G.subdivide(s, true));
    m.color = G.point(y).color;
  } else {
    const auto ins = G.point(x).in;
    for (StrandId s : ins) fresh.push_back(G.subdivide(s, true));
    m.color = G.point(x).color;
  }
  c.base_line.erase(c.base_line.begin() + index);
  c.base_line.insert(c.base_line.begin() + index, fresh.begin(), fresh.end());
  m.through = dir;
  m.width = fresh.size();
  m.colors_after = c.colors();
  return m;
}

Move shift_reduce_in_place(ClosedDiagram& c, std::size_t index, std::size_t width) {
  auto& G = c.graph;
  if (width < 2 || index + width > c.base_line.size()) {
    throw InvalidInput("reducing shift needs at least two consecutive base points");
  }
  Move m;
  m.kind = MoveKind::ShiftReduce;
  m.index = index;
  m.width = width;
  m.colors_before = c.colors();
  std::vector<PointId> block(c.base_line.begin() + index,
                             c.base_line.begin() + index + width);

  const PointId merge = G.strand(G.point(block[0]).out[0]).terminus;
  bool via_merge = merge_like(G.point(merge)) && G.point(merge).out.size() == 1 &&
                   G.point(merge).in.size() == width;
  for (std::size_t j = 0; via_merge && j < width; ++j) {
    via_merge = G.point(merge).in[j] == G.point(block[j]).out[0];
  }
  const PointId split = G.strand(G.point(block[0]).in[0]).origin;
  bool via_split = split_like(G.point(split)) && G.point(split).in.size() == 1 &&
                   G.point(split).out.size() == width;
  for (std::size_t j = 0; via_split && j < width; ++j) {
    via_split = G.point(split).out[j] == G.point(block[j]).in[0];
  }
  if (!via_merge && !via_split) {
    throw InvalidInput("base points are not exactly the inputs of a merge or outputs of a split");
  }
  for (PointId b : block) {
    G.join(G.point(b).in[0], G.point(b).out[0]);
    G.kill_point(b);
  }
  PointId fresh;
  if (via_merge) {
    fresh = G.subdivide(G.point(merge).out[0], true);
    m.through = ShiftThrough::Merge;
    m.color = G.point(merge).color;
  } else {
    fresh = G.subdivide(G.point(split).in[0], true);
    m.through = ShiftThrough::Split;
    m.color = G.point(split).color;
  }
  c.base_line.erase(c.base_line.begin() + index, c.base_line.begin() + index + width);
  c.base_line.insert(c.base_line.begin() + index, fresh);
  m.colors_after = c.colors();
  return m;
}

Move permute_in_place(ClosedDiagram& c, const std::vector<std::size_t>& perm) {
  if (perm.size() != c.base_line.size()) throw InvalidInput("permutation size mismatch");
  std::vector<bool> hit(perm.size(), false);
  for (auto j : perm) {
    if (j >= perm.size() || hit[j]) throw InvalidInput("not a permutation");
    hit[j] = true;
  }
  Move m;
  m.kind = MoveKind::Permute;
  m.perm = perm;
  m.colors_before = c.colors();
  std::vector<PointId> line(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) line[j] = c.base_line[perm[j]];
  c.base_line = std::move(line);
  m.colors_after = c.colors();
  return m;
}

Move reduce_in_place(ClosedDiagram& c, const Redex& r) {
  Move m;
  m.kind = r.type == 0 ? MoveKind::Reduce0 : r.type == 1 ? MoveKind::Reduce1 : MoveKind::Reduce2;
  m.redex = r;
  m.colors_before = c.colors();
  apply_redex(c.graph, r);
  m.colors_after = c.colors();
  return m;
}

// Points of the pure loop through p, in cycle order starting at p, or empty
// when the cycle leaves the base line.
std::vector<PointId> loop_from(const DiagramGraph& G, PointId p) {
  std::vector<PointId> cycle;
  PointId at = p;
  do {
    const auto& pt = G.point(at);
    if (!pt.base) return {};
    cycle.push_back(at);
    at = G.strand(pt.out[0]).terminus;
    if (cycle.size() > G.point_capacity()) return {};
  } while (at != p);
  return cycle;
}

Move type3_reduce_in_place(ClosedDiagram& c, const ShiftGraph& g, std::size_t start,
                           std::size_t d, std::size_t k, std::optional<VertexId> v) {
  auto& G = c.graph;
  if (d < 2 || k < 1 || start + d * k > c.base_line.size()) {
    throw InvalidInput("type 3 block out of range");
  }
  Move m;
  m.kind = MoveKind::Type3Reduce;
  m.index = start;
  m.width = d;
  m.winding = k;
  m.colors_before = c.colors();
  std::vector<VertexId> loop_colors;
  for (std::size_t j = 0; j < d; ++j) {
    const auto cycle = loop_from(G, c.base_line[start + j]);
    if (cycle.size() != k) throw InvalidInput("base points do not form loops of the given winding");
    for (std::size_t t = 0; t < k; ++t) {
      if (cycle[t] != c.base_line[start + j + t * d]) {
        throw InvalidInput("loops are not interleaved in base line order");
      }
    }
    loop_colors.push_back(G.point(cycle[0]).color);
  }
  std::optional<VertexId> target;
  if (v) {
    if (g.child_colors(*v) == loop_colors) target = v;
  } else {
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
      if (g.child_colors(static_cast<VertexId>(u)) == loop_colors) {
        target = static_cast<VertexId>(u);
        break;
      }
    }
  }
  if (!target) throw InvalidInput("no vertex has these loop colors as its children");

  for (std::size_t i = start; i < start + d * k; ++i) {
    const PointId p = c.base_line[i];
    G.kill_strand(G.point(p).out[0]);
    G.kill_point(p);
  }
  std::vector<PointId> fresh;
  for (std::size_t t = 0; t < k; ++t) fresh.push_back(G.add_point(*target, true));
  for (std::size_t t = 0; t < k; ++t) G.add_strand(fresh[t], fresh[(t + 1) % k], *target);
  c.base_line.erase(c.base_line.begin() + start, c.base_line.begin() + start + d * k);
  c.base_line.insert(c.base_line.begin() + start, fresh.begin(), fresh.end());
  m.color = *target;
  m.colors_after = c.colors();
  return m;
}

Move type3_expand_in_place(ClosedDiagram& c, const ShiftGraph& g, std::size_t start,
                           std::size_t k) {
  auto& G = c.graph;
  if (k < 1 || start + k > c.base_line.size()) throw InvalidInput("type 3 loop out of range");
  const auto cycle = loop_from(G, c.base_line[start]);
  if (cycle.size() != k ||
      !std::equal(cycle.begin(), cycle.end(), c.base_line.begin() + start)) {
    throw InvalidInput("base points do not form one loop in cycle order");
  }
  const VertexId v = G.point(cycle[0]).color;
  const auto kids = g.child_colors(v);
  if (kids.size() < 2) throw InvalidInput("the loop color has a single child");
  Move m;
  m.kind = MoveKind::Type3Expand;
  m.index = start;
  m.width = kids.size();
  m.winding = k;
  m.color = v;
  m.colors_before = c.colors();
  for (PointId p : cycle) {
    G.kill_strand(G.point(p).out[0]);
    G.kill_point(p);
  }
  const std::size_t d = kids.size();
  std::vector<PointId> fresh(d * k);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t j = 0; j < d; ++j) fresh[j + t * d] = G.add_point(kids[j], true);
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t t = 0; t < k; ++t) {
      G.add_strand(fresh[j + t * d], fresh[j + ((t + 1) % k) * d], kids[j]);
    }
  }
  c.base_line.erase(c.base_line.begin() + start, c.base_line.begin() + start + k);
  c.base_line.insert(c.base_line.begin() + start, fresh.begin(), fresh.end());
  m.colors_after = c.colors();
  return m;
}

Move apply_in_place(ClosedDiagram& c, const ShiftGraph& g, const Move& m) {
  switch (m.kind) {
    case MoveKind::ShiftExpand: return shift_expand_in_place(c, m.index, m.through);
    case MoveKind::ShiftReduce: return shift_reduce_in_place(c, m.index, m.width);
    case MoveKind::Permute: return permute_in_place(c, m.perm);
    case MoveKind::Reduce0:
    case MoveKind::Reduce1:
    case MoveKind::Reduce2: return reduce_in_place(c, m.redex);
    case MoveKind::Type3Reduce:
      return type3_reduce_in_place(c, g, m.index, m.width, m.winding, m.color);
    case MoveKind::Type3Expand: return type3_expand_in_place(c, g, m.index, m.winding);
  }
  throw InvalidInput("unknown move");
}

}  // namespace

std::pair<ClosedDiagram, Move> shift_expand(const ClosedDiagram& c, std::size_t index,
                                            std::optional<ShiftThrough> through) {
  ClosedDiagram out = c;
  Move m = shift_expand_in_place(out, index, through);
  return {std::move(out), std::move(m)};
}

std::pair<ClosedDiagram, Move> shift_reduce(const ClosedDiagram& c, std::size_t index,
                                            std::size_t width) {
  ClosedDiagram out = c;
  Move m = shift_reduce_in_place(out, index, width);
  return {std::move(out), std::move(m)};
}

std::pair<ClosedDiagram, Move> permute_base(const ClosedDiagram& c,
                                            const std::vector<std::size_t>& perm) {
  ClosedDiagram out = c;
  Move m = permute_in_place(out, perm);
  return {std::move(out), std::move(m)};
}

std::optional<std::pair<ClosedDiagram, Move>> reduce_closed_step(const ClosedDiagram& c) {
  const auto redexes = find_redexes(c.graph);
  if (redexes.empty()) return std::nullopt;
  ClosedDiagram out = c;
  Move m = reduce_in_place(out, redexes.front());
  return std::make_pair(std::move(out), std::move(m));
}

std::pair<ClosedDiagram, Move> type3_reduce(const ClosedDiagram& c, const ShiftGraph& g,
                                            std::size_t start, std::size_t d,
                                            std::size_t k, std::optional<VertexId> v) {
  ClosedDiagram out = c;
  Move m = type3_reduce_in_place(out, g, start, d, k, v);
  return {std::move(out), std::move(m)};
}

std::pair<ClosedDiagram, Move> type3_expand(const ClosedDiagram& c, const ShiftGraph& g,
                                            std::size_t start, std::size_t k) {
  ClosedDiagram out = c;
  Move m = type3_expand_in_place(out, g, start, k);
  return {std::move(out), std::move(m)};
}

ClosedDiagram apply_move(const ClosedDiagram& c, const ShiftGraph& g, const Move& m) {
  ClosedDiagram out = c;
  apply_in_place(out, g, m);
  return out;
}

ClosedDiagram replay(const ClosedDiagram& c, const ShiftGraph& g,
                     const ConjugationTrace& t) {
  ClosedDiagram out = c;
  for (const auto& m : t.moves) apply_in_place(out, g, m);
  return out;
}

namespace {

// Merges k consecutive blocks, each listing the children of v, starting at
// `start` into k points of color v, one block at a time.
StrandDiagram block_merges(const ShiftGraph& g, std::vector<VertexId> colors,
                           std::size_t start, std::size_t k, VertexId v) {
  StrandDiagram acc = identity_diagram(colors);
  for (std::size_t t = 0; t < k; ++t) {
    const auto step = merge_diagram(g, colors, start + t, v);
    acc = reduce(compose(acc, step));
    colors = step.range();
  }
  return acc;
}

}  // namespace

StrandDiagram move_conjugator(const Move& m, const ShiftGraph& g) {
  switch (m.kind) {
    case MoveKind::ShiftExpand:
      return merge_diagram(g, m.colors_after, m.index, m.color);
    case MoveKind::ShiftReduce:
      return invert(merge_diagram(g, m.colors_before, m.index, m.color));
    case MoveKind::Permute:
      return permutation_diagram(m.colors_after, m.perm);
    case MoveKind::Reduce0:
    case MoveKind::Reduce1:
    case MoveKind::Reduce2:
      return identity_diagram(m.colors_after);
    case MoveKind::Type3Reduce:
      return invert(block_merges(g, m.colors_before, m.index, m.winding, m.color));
    case MoveKind::Type3Expand:
      return block_merges(g, m.colors_after, m.index, m.winding, m.color);
  }
  throw InvalidInput("unknown move");
}

StrandDiagram trace_conjugator(const ConjugationTrace& t, const ShiftGraph& g) {
  StrandDiagram h = identity_diagram(t.initial_colors);
  for (const auto& m : t.moves) {
    if (m.kind == MoveKind::Reduce0 || m.kind == MoveKind::Reduce1 ||
        m.kind == MoveKind::Reduce2) {
      continue;
    }
    h = reduce(compose(move_conjugator(m, g), h));
  }
  return h;
}

namespace {

// First non-base point reached from strand s, and the strand entering it.
struct ChainEnd {
  PointId point;
  StrandId last;
  std::size_t base_points;
};

ChainEnd follow_forward(const DiagramGraph& G, StrandId s) {
  std::size_t n = 0;
  for (;;) {
    const PointId t = G.strand(s).terminus;
    if (!G.point(t).base) return {t, s, n};
    ++n;
    s = G.point(t).out[0];
    if (n > G.point_capacity()) throw InvalidInput("cycle without split or merge");
  }
}

}  // namespace

std::vector<Pattern> unlockable_patterns(const ClosedDiagram& c) {
  const auto& G = c.graph;
  std::vector<Pattern> out;
  for (PointId v : G.live_points()) {
    const auto& pt = G.point(v);
    if (pt.base) continue;
    if (pt.in.size() == 1 && pt.out.size() == 1) {
      out.push_back({0, v, -1, 0});
    } else if (merge_like(pt) && pt.out.size() == 1) {
      const auto end = follow_forward(G, pt.out[0]);
      const auto& wt = G.point(end.point);
      if (end.point != v && split_like(wt) && wt.in.size() == 1 && wt.color == pt.color) {
        out.push_back({2, v, end.point, end.base_points});
      }
    } else if (split_like(pt)) {
      std::optional<PointId> w;
      std::size_t n = 0;
      bool ok = true;
      for (std::size_t j = 0; ok && j < pt.out.size(); ++j) {
        const auto end = follow_forward(G, pt.out[j]);
        const auto& wt = G.point(end.point);
        if (j == 0) {
          w = end.point;
          n = end.base_points;
        }
        ok = end.point == *w && end.base_points == n && merge_like(wt) &&
             wt.in.size() == pt.out.size() && wt.in[j] == end.last && wt.color == pt.color;
      }
      if (ok && w && *w != v) out.push_back({1, v, *w, n});
    }
  }
  // Cheapest first: type 0, then redexes needing no shift, then type 2 by
  // the number of expanding shifts, then type 1.
  auto rank = [](const Pattern& p) {
    if (p.type == 0) return std::make_pair(0, std::size_t{0});
    if (p.base_points == 0) return std::make_pair(1, std::size_t{0});
    return std::make_pair(p.type == 2 ? 2 : 3, p.base_points);
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const Pattern& a, const Pattern& b) { return rank(a) < rank(b); });
  return out;
}

bool is_semi_reduced(const ClosedDiagram& c) { return unlockable_patterns(c).empty(); }

SemiReduceResult semi_reduce(const ClosedDiagram& input, const SemiReduceOptions& options) {
  SemiReduceResult result;
  result.diagram = input;
  result.trace.initial_colors = input.colors();
  auto& c = result.diagram;
  auto& G = c.graph;
  auto record = [&](Move m) { result.trace.moves.push_back(std::move(m)); };

  for (;;) {
    const auto patterns = unlockable_patterns(c);
    if (patterns.empty()) break;
    Pattern p = patterns.front();
    if (options.rng) {
      std::uniform_int_distribution<std::size_t> pick(0, patterns.size() - 1);
      p = patterns[pick(*options.rng)];
    }
    if (p.type == 2) {
      if (options.budget && p.base_points > *options.budget) {
        throw LimitExceeded("similarity budget",
                            "unlocking a type 2 reduction needs " +
                                std::to_string(p.base_points) +
                                " expanding shifts, budget is " +
                                std::to_string(*options.budget));
      }
      result.max_unlock_expansions = std::max(result.max_unlock_expansions, p.base_points);
      for (std::size_t i = 0; i < p.base_points; ++i) {
        const PointId b = G.strand(G.point(p.w).in[0]).origin;
        record(shift_expand_in_place(c, position(c.base_line, b), ShiftThrough::Split));
      }
    } else if (p.type == 1) {
      for (std::size_t i = 0; i < p.base_points; ++i) {
        std::vector<PointId> block;
        for (StrandId s : G.point(p.w).in) block.push_back(G.strand(s).origin);
        std::size_t first = c.base_line.size();
        for (PointId b : block) first = std::min(first, position(c.base_line, b));
        std::vector<PointId> rest;
        for (PointId q : c.base_line) {
          if (std::find(block.begin(), block.end(), q) == block.end()) rest.push_back(q);
        }
        std::vector<PointId> target(rest.begin(), rest.begin() + first);
        target.insert(target.end(), block.begin(), block.end());
        target.insert(target.end(), rest.begin() + first, rest.end());
        if (target != c.base_line) {
          std::vector<std::size_t> perm;
          for (PointId q : target) perm.push_back(position(c.base_line, q));
          record(permute_in_place(c, perm));
        }
        record(shift_reduce_in_place(c, first, block.size()));
      }
    }
    const Redex r{p.type, p.v, p.w};
    const auto direct = find_redexes(G);
    if (std::find(direct.begin(), direct.end(), r) == direct.end()) {
      throw InvalidInput("internal error: unlocked redex is not available");
    }
    record(reduce_in_place(c, r));
    if (p.type == 0) ++result.log.type0;
    if (p.type == 1) ++result.log.type1;
    if (p.type == 2) ++result.log.type2;
  }
  return result;
}

std::vector<std::vector<PointId>> components(const DiagramGraph& G) {
  std::vector<int> comp(G.point_capacity(), -1);
  std::vector<std::vector<PointId>> out;
  for (PointId p : G.live_points()) {
    if (comp[p] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<PointId> stack{p};
    comp[p] = id;
    while (!stack.empty()) {
      const PointId q = stack.back();
      stack.pop_back();
      out.back().push_back(q);
      auto visit = [&](PointId r) {
        if (comp[r] < 0) {
          comp[r] = id;
          stack.push_back(r);
        }
      };
      for (StrandId s : G.point(q).out) visit(G.strand(s).terminus);
      for (StrandId s : G.point(q).in) visit(G.strand(s).origin);
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

Parts decompose_parts(const ClosedDiagram& c) {
  Parts parts;
  parts.split_merge = c;
  auto& G = parts.split_merge.graph;
  std::set<PointId> dropped;
  for (const auto& comp : components(c.graph)) {
    const bool pure = std::all_of(comp.begin(), comp.end(),
                                  [&](PointId p) { return c.graph.point(p).base; });
    if (!pure) {
      const bool has_sm = std::any_of(comp.begin(), comp.end(), [&](PointId p) {
        const auto& pt = c.graph.point(p);
        return split_like(pt) || merge_like(pt);
      });
      if (!has_sm) throw InvalidInput("component with degenerate points only; semi-reduce first");
      continue;
    }
    ++parts.loops[{c.graph.point(comp[0]).color, comp.size()}];
    for (PointId p : comp) {
      G.kill_strand(G.point(p).out[0]);
      G.kill_point(p);
      dropped.insert(p);
    }
  }
  auto& line = parts.split_merge.base_line;
  line.erase(std::remove_if(line.begin(), line.end(),
                            [&](PointId p) { return dropped.count(p) > 0; }),
             line.end());
  return parts;
}

LoopMultiset loop_multiset(const ClosedDiagram& c) {
  LoopMultiset out;
  for (const auto& comp : components(c.graph)) {
    if (std::all_of(comp.begin(), comp.end(), [&](PointId p) { return c.graph.point(p).base; })) {
      ++out[{c.graph.point(comp[0]).color, comp.size()}];
    }
  }
  return out;
}

std::string canonical_form(const ClosedDiagram& c) {
  const auto& G = c.graph;
  std::vector<int> label(G.point_capacity(), -1);
  std::vector<PointId> order;
  std::deque<PointId> queue;
  auto visit = [&](PointId p) {
    if (label[p] >= 0) return;
    label[p] = static_cast<int>(order.size());
    order.push_back(p);
    queue.push_back(p);
  };
  for (PointId p : c.base_line) visit(p);
  while (!queue.empty()) {
    const PointId p = queue.front();
    queue.pop_front();
    for (StrandId s : G.point(p).out) visit(G.strand(s).terminus);
  }
  std::ostringstream os;
  for (PointId p : order) {
    const auto& pt = G.point(p);
    os << 'p' << pt.color << (pt.base ? "b" : "") << '/' << pt.in.size() << '/'
       << pt.out.size() << ':';
    for (StrandId s : pt.out) {
      const auto& st = G.strand(s);
      const auto& in = G.point(st.terminus).in;
      os << st.color << '>' << label[st.terminus] << '.'
         << (std::find(in.begin(), in.end(), s) - in.begin()) << ',';
    }
    os << ';';
  }
  os << "|n" << G.live_point_count();
  return os.str();
}

namespace {

std::string component_key_from(const DiagramGraph& G, PointId anchor, std::size_t size) {
  std::map<PointId, int> label;
  std::vector<PointId> order;
  std::deque<PointId> queue;
  auto visit = [&](PointId p) {
    if (label.count(p)) return;
    label[p] = static_cast<int>(order.size());
    order.push_back(p);
    queue.push_back(p);
  };
  visit(anchor);
  while (!queue.empty()) {
    const PointId p = queue.front();
    queue.pop_front();
    for (StrandId s : G.point(p).out) visit(G.strand(s).terminus);
    for (StrandId s : G.point(p).in) visit(G.strand(s).origin);
  }
  std::ostringstream os;
  os << size << '#';
  for (PointId p : order) {
    const auto& pt = G.point(p);
    os << pt.color << (pt.base ? "b" : "") << '/' << pt.in.size() << '/' << pt.out.size() << ':';
    for (StrandId s : pt.out) {
      const auto& in = G.point(G.strand(s).terminus).in;
      os << label[G.strand(s).terminus] << '.' << (std::find(in.begin(), in.end(), s) - in.begin())
         << ',';
    }
    os << ';';
  }
  return os.str();
}

}  // namespace

std::string similarity_key(const ClosedDiagram& c) {
  std::vector<std::string> keys;
  for (const auto& comp : components(c.graph)) {
    std::string best;
    for (PointId a : comp) {
      auto k = component_key_from(c.graph, a, comp.size());
      if (best.empty() || k < best) best = std::move(k);
    }
    keys.push_back(std::move(best));
  }
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) out += k + "|";
  return out;
}

std::size_t non_base_point_count(const ClosedDiagram& c) {
  std::size_t n = 0;
  for (PointId p : c.graph.live_points()) n += c.graph.point(p).base ? 0 : 1;
  return n;
}

}  // namespace shiftconj
