#include "shiftconj/strand_diagram.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "shiftconj/errors.hpp"

namespace shiftconj {

const char* to_string(PointKind k) {
  switch (k) {
    case PointKind::UnivalentSource: return "univalent-source";
    case PointKind::UnivalentSink: return "univalent-sink";
    case PointKind::SplitSource: return "split-source";
    case PointKind::MergeSink: return "merge-sink";
    case PointKind::Split: return "split";
    case PointKind::Merge: return "merge";
    case PointKind::Degenerate: return "degenerate";
    case PointKind::Base: return "base";
    case PointKind::Invalid: return "invalid";
  }
  return "invalid";
}

PointId DiagramGraph::add_point(VertexId color, bool base) {
  DiagramPoint p;
  p.color = color;
  p.base = base;
  points_.push_back(std::move(p));
  return static_cast<PointId>(points_.size() - 1);
}

StrandId DiagramGraph::add_strand(PointId origin, PointId terminus,
                                  VertexId color, bool attach) {
  strands_.push_back(DiagramStrand{origin, terminus, color, true});
  const auto s = static_cast<StrandId>(strands_.size() - 1);
  if (attach) {
    points_.at(origin).out.push_back(s);
    points_.at(terminus).in.push_back(s);
  }
  return s;
}

std::vector<PointId> DiagramGraph::live_points() const {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].alive) out.push_back(static_cast<PointId>(i));
  }
  return out;
}

std::vector<StrandId> DiagramGraph::live_strands() const {
  std::vector<StrandId> out;
  for (std::size_t i = 0; i < strands_.size(); ++i) {
    if (strands_[i].alive) out.push_back(static_cast<StrandId>(i));
  }
  return out;
}

std::size_t DiagramGraph::live_point_count() const {
  return static_cast<std::size_t>(std::count_if(
      points_.begin(), points_.end(), [](const auto& p) { return p.alive; }));
}

void DiagramGraph::kill_point(PointId p) {
  auto& pt = points_.at(p);
  pt.alive = false;
  pt.in.clear();
  pt.out.clear();
}

void DiagramGraph::kill_strand(StrandId s) { strands_.at(s).alive = false; }

void DiagramGraph::replace(std::vector<StrandId>& list, StrandId from,
                           StrandId to) {
  std::replace(list.begin(), list.end(), from, to);
}

void DiagramGraph::join(StrandId s1, StrandId s2) {
  auto& b = strands_.at(s2);
  const PointId far = b.terminus;
  replace(points_.at(far).in, s2, s1);
  strands_.at(s1).terminus = far;
  b.alive = false;
}

PointId DiagramGraph::subdivide(StrandId s, bool base) {
  const auto color = strands_.at(s).color;
  const PointId far = strands_.at(s).terminus;
  const PointId p = add_point(color, base);
  const StrandId t = add_strand(p, far, color, false);
  replace(points_.at(far).in, s, t);
  strands_.at(s).terminus = p;
  points_.at(p).in.push_back(s);
  points_.at(p).out.push_back(t);
  return p;
}

std::vector<StrandId> DiagramGraph::rotation(PointId p) const {
  const auto& pt = points_.at(p);
  std::vector<StrandId> cyc;
  if (pt.out.size() >= 2 && pt.in.size() <= 1) {
    cyc = pt.in;
    cyc.insert(cyc.end(), pt.out.begin(), pt.out.end());
  } else if (pt.in.size() >= 2 && pt.out.size() <= 1) {
    cyc = pt.out;
    cyc.insert(cyc.end(), pt.in.rbegin(), pt.in.rend());
  } else {
    cyc = pt.in;
    cyc.insert(cyc.end(), pt.out.begin(), pt.out.end());
  }
  return cyc;
}

std::vector<VertexId> StrandDiagram::domain() const {
  std::vector<VertexId> out;
  for (PointId p : sources) out.push_back(graph.point(p).color);
  return out;
}

std::vector<VertexId> StrandDiagram::range() const {
  std::vector<VertexId> out;
  for (PointId p : sinks) out.push_back(graph.point(p).color);
  return out;
}

namespace {

PointKind kind_of(const DiagramPoint& pt) {
  const auto in = pt.in.size();
  const auto out = pt.out.size();
  if (pt.base) return in == 1 && out == 1 ? PointKind::Base : PointKind::Invalid;
  if (in == 0 && out == 1) return PointKind::UnivalentSource;
  if (in == 1 && out == 0) return PointKind::UnivalentSink;
  if (in == 0 && out >= 2) return PointKind::SplitSource;
  if (out == 0 && in >= 2) return PointKind::MergeSink;
  if (in == 1 && out >= 2) return PointKind::Split;
  if (out == 1 && in >= 2) return PointKind::Merge;
  if (in == 1 && out == 1) return PointKind::Degenerate;
  return PointKind::Invalid;
}

bool is_split_like(const DiagramPoint& pt) {
  return !pt.base && pt.out.size() >= 2 && pt.in.size() <= 1;
}

bool is_merge_like(const DiagramPoint& pt) {
  return !pt.base && pt.in.size() >= 2 && pt.out.size() <= 1;
}

}  // namespace

PointKind StrandDiagram::kind(PointId p) const { return kind_of(graph.point(p)); }

std::vector<std::string> validate_strand_diagram(const StrandDiagram& d,
                                                 const ShiftGraph& g) {
  std::vector<std::string> report;
  const auto& G = d.graph;
  auto name = [&](PointId p) { return "point " + std::to_string(p); };
  auto color_ok = [&](VertexId c) {
    return c >= 0 && static_cast<std::size_t>(c) < g.vertex_count();
  };

  for (StrandId s : G.live_strands()) {
    const auto& st = G.strand(s);
    if (!color_ok(st.color)) report.push_back("strand " + std::to_string(s) + " has an unknown color");
    const auto& o = G.point(st.origin);
    const auto& t = G.point(st.terminus);
    if (!o.alive || !t.alive ||
        std::count(o.out.begin(), o.out.end(), s) != 1 ||
        std::count(t.in.begin(), t.in.end(), s) != 1) {
      report.push_back("strand " + std::to_string(s) + " is not attached consistently");
    }
  }
  if (!report.empty()) return report;

  std::set<PointId> listed_sources(d.sources.begin(), d.sources.end());
  std::set<PointId> listed_sinks(d.sinks.begin(), d.sinks.end());
  if (listed_sources.size() != d.sources.size()) report.push_back("a source is listed twice");
  if (listed_sinks.size() != d.sinks.size()) report.push_back("a sink is listed twice");

  for (PointId p : G.live_points()) {
    const auto& pt = G.point(p);
    if (!color_ok(pt.color)) {
      report.push_back(name(p) + " has an unknown color");
      continue;
    }
    const auto k = kind_of(pt);
    if (k == PointKind::Invalid || k == PointKind::Base) {
      report.push_back(name(p) + " has degrees not allowed in a strand diagram");
      continue;
    }
    if (pt.in.empty() != (listed_sources.count(p) == 1)) {
      report.push_back(name(p) + " disagrees with the source order");
    }
    if (pt.out.empty() != (listed_sinks.count(p) == 1)) {
      report.push_back(name(p) + " disagrees with the sink order");
    }
    const auto kids = g.child_colors(pt.color);
    auto colors_of = [&](const std::vector<StrandId>& list) {
      std::vector<VertexId> cs;
      for (StrandId s : list) cs.push_back(G.strand(s).color);
      return cs;
    };
    switch (k) {
      case PointKind::Split:
      case PointKind::SplitSource:
        if (colors_of(pt.out) != kids) report.push_back(name(p) + " violates the split condition");
        if (!pt.in.empty() && G.strand(pt.in[0]).color != pt.color) {
          report.push_back(name(p) + " has an in-strand of the wrong color");
        }
        break;
      case PointKind::Merge:
      case PointKind::MergeSink:
        if (colors_of(pt.in) != kids) report.push_back(name(p) + " violates the merge condition");
        if (!pt.out.empty() && G.strand(pt.out[0]).color != pt.color) {
          report.push_back(name(p) + " has an out-strand of the wrong color");
        }
        break;
      case PointKind::Degenerate:
        if (G.strand(pt.in[0]).color != pt.color || G.strand(pt.out[0]).color != pt.color ||
            !g.is_isolated(pt.color)) {
          report.push_back(name(p) + " violates the degenerate point condition");
        }
        break;
      case PointKind::UnivalentSource:
        if (G.strand(pt.out[0]).color != pt.color) report.push_back(name(p) + " has a strand of another color");
        break;
      case PointKind::UnivalentSink:
        if (G.strand(pt.in[0]).color != pt.color) report.push_back(name(p) + " has a strand of another color");
        break;
      default:
        break;
    }
  }
  for (PointId p : d.sources) {
    if (!G.point(p).alive) report.push_back("a listed source was removed");
  }
  for (PointId p : d.sinks) {
    if (!G.point(p).alive) report.push_back("a listed sink was removed");
  }

  // Kahn's algorithm for acyclicity.
  std::vector<std::size_t> indeg(G.point_capacity(), 0);
  std::deque<PointId> queue;
  std::size_t live = 0;
  for (PointId p : G.live_points()) {
    ++live;
    indeg[p] = G.point(p).in.size();
    if (indeg[p] == 0) queue.push_back(p);
  }
  std::size_t seen = 0;
  while (!queue.empty()) {
    const PointId p = queue.front();
    queue.pop_front();
    ++seen;
    for (StrandId s : G.point(p).out) {
      if (--indeg[G.strand(s).terminus] == 0) queue.push_back(G.strand(s).terminus);
    }
  }
  if (seen != live) report.push_back("the diagram has a directed cycle");
  return report;
}

StrandDiagram identity_diagram(const std::vector<VertexId>& colors) {
  std::vector<std::size_t> perm(colors.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  return permutation_diagram(colors, perm);
}

StrandDiagram permutation_diagram(const std::vector<VertexId>& colors,
                                  const std::vector<std::size_t>& perm) {
  if (perm.size() != colors.size()) throw InvalidInput("permutation size mismatch");
  std::vector<bool> hit(perm.size(), false);
  for (auto j : perm) {
    if (j >= perm.size() || hit[j]) throw InvalidInput("not a permutation");
    hit[j] = true;
  }
  StrandDiagram d;
  d.sinks.assign(colors.size(), -1);
  for (std::size_t j = 0; j < colors.size(); ++j) {
    d.sources.push_back(d.graph.add_point(colors[j]));
  }
  for (std::size_t j = 0; j < colors.size(); ++j) {
    d.sinks[perm[j]] = d.graph.add_point(colors[j]);
  }
  for (std::size_t j = 0; j < colors.size(); ++j) {
    d.graph.add_strand(d.sources[j], d.sinks[perm[j]], colors[j]);
  }
  return d;
}

StrandDiagram merge_diagram(const ShiftGraph& g,
                            const std::vector<VertexId>& colors,
                            std::size_t index, VertexId c) {
  const auto kids = g.child_colors(c);
  if (kids.size() < 2 || index + kids.size() > colors.size() ||
      !std::equal(kids.begin(), kids.end(), colors.begin() + index)) {
    throw InvalidInput("block does not list the child colors of the merge");
  }
  StrandDiagram d;
  PointId m = -1;
  for (std::size_t j = 0; j < colors.size(); ++j) {
    const PointId s = d.graph.add_point(colors[j]);
    d.sources.push_back(s);
    if (j >= index && j < index + kids.size()) {
      if (m < 0) {
        m = d.graph.add_point(c);
        d.sinks.push_back(m);
      }
      d.graph.add_strand(s, m, colors[j]);
    } else {
      const PointId t = d.graph.add_point(colors[j]);
      d.sinks.push_back(t);
      d.graph.add_strand(s, t, colors[j]);
    }
  }
  return d;
}

StrandDiagram split_diagram(const ShiftGraph& g,
                            const std::vector<VertexId>& colors,
                            std::size_t index) {
  if (index >= colors.size()) throw InvalidInput("split position out of range");
  auto merged = colors;
  const auto kids = g.child_colors(colors[index]);
  merged.erase(merged.begin() + index);
  merged.insert(merged.begin() + index, kids.begin(), kids.end());
  return invert(merge_diagram(g, merged, index, colors[index]));
}

StrandDiagram from_forest_pair(const ShiftGraph& g, const ForestPair& fp) {
  if (const auto report = validate_forest_pair(g, fp); !report.empty()) {
    throw InvalidInput("invalid forest pair: " + report.front());
  }
  struct Slot {
    PointId point;
    std::size_t index;
  };
  StrandDiagram d;
  auto& G = d.graph;
  const auto& y = fp.base;

  auto internal_of = [](const std::vector<PathWord>& leaves) {
    std::set<PathWord> out;
    for (const auto& w : leaves) {
      PathWord p{w.root, {}};
      for (EdgeId e : w.edges) {
        out.insert(p);
        p.edges.push_back(e);
      }
    }
    return out;
  };

  // Builds one forest; `down` selects out-lists (domain) or in-lists (range).
  auto build = [&](const std::vector<PathWord>& leaves, bool down,
                   std::vector<PointId>& roots) {
    const auto internal = internal_of(leaves);
    std::map<PathWord, Slot> slots;
    for (std::size_t r = 0; r < y.size(); ++r) {
      const PathWord root{r, {}};
      const PointId p = G.add_point(y.roots[r]);
      roots.push_back(p);
      std::vector<std::pair<PathWord, PointId>> stack{{root, p}};
      if (!internal.count(root)) {
        (down ? G.point(p).out : G.point(p).in).assign(1, -1);
        slots[root] = Slot{p, 0};
        continue;
      }
      while (!stack.empty()) {
        auto [word, at] = stack.back();
        stack.pop_back();
        const auto kids = children(g, y, word);
        (down ? G.point(at).out : G.point(at).in).assign(kids.size(), -1);
        for (std::size_t j = 0; j < kids.size(); ++j) {
          if (internal.count(kids[j])) {
            const VertexId c = word_color(g, y, kids[j]);
            const PointId q = G.add_point(c);
            const StrandId s = down ? G.add_strand(at, q, c, false)
                                    : G.add_strand(q, at, c, false);
            if (down) {
              G.point(at).out[j] = s;
              G.point(q).in.assign(1, s);
            } else {
              G.point(at).in[j] = s;
              G.point(q).out.assign(1, s);
            }
            stack.emplace_back(kids[j], q);
          } else {
            slots[kids[j]] = Slot{at, j};
          }
        }
      }
    }
    return slots;
  };

  const auto top = build(fp.domain, true, d.sources);
  const auto bottom = build(fp.range, false, d.sinks);
  for (std::size_t i = 0; i < fp.domain.size(); ++i) {
    const Slot a = top.at(fp.domain[i]);
    const Slot b = bottom.at(fp.range[i]);
    const StrandId s =
        G.add_strand(a.point, b.point, word_color(g, y, fp.domain[i]), false);
    G.point(a.point).out[a.index] = s;
    G.point(b.point).in[b.index] = s;
  }
  absorb_terminals(d);
  return d;
}

ForestPair to_forest_pair(const StrandDiagram& input, const ShiftGraph& g,
                          const BaseTuple& y) {
  StrandDiagram d = input;
  absorb_terminals(d);
  if (!is_reduced(d)) throw InvalidInput("to_forest_pair needs a reduced diagram");
  if (d.domain() != d.range()) throw InvalidInput("domain and range differ");
  if (d.domain() != y.roots) throw InvalidInput("diagram signature differs from the base");
  const auto& G = d.graph;

  std::map<StrandId, PathWord> top_word;
  std::vector<StrandId> order;
  std::function<void(PointId, const PathWord&)> descend = [&](PointId p,
                                                              const PathWord& w) {
    const auto& pt = G.point(p);
    if (pt.out.size() == 1 && pt.in.empty()) {
      top_word[pt.out[0]] = w;
      order.push_back(pt.out[0]);
      return;
    }
    const auto edges = g.out_edges(pt.color);
    for (std::size_t j = 0; j < pt.out.size(); ++j) {
      const StrandId s = pt.out[j];
      const PointId t = G.strand(s).terminus;
      PathWord c = w.child(edges[j]);
      const auto& tp = G.point(t);
      if (tp.in.size() == 1 && tp.out.size() >= 2) {
        descend(t, c);
      } else {
        top_word[s] = c;
        order.push_back(s);
      }
    }
  };
  for (std::size_t r = 0; r < d.sources.size(); ++r) descend(d.sources[r], PathWord{r, {}});

  std::map<StrandId, PathWord> bottom_word;
  for (std::size_t r = 0; r < d.sinks.size(); ++r) {
    std::vector<std::pair<PointId, PathWord>> stack{{d.sinks[r], PathWord{r, {}}}};
    while (!stack.empty()) {
      auto [p, w] = stack.back();
      stack.pop_back();
      const auto& pt = G.point(p);
      if (pt.in.size() == 1 && pt.out.empty()) {
        bottom_word[pt.in[0]] = w;
        continue;
      }
      const auto edges = g.out_edges(pt.color);
      for (std::size_t j = 0; j < pt.in.size(); ++j) {
        const StrandId s = pt.in[j];
        const auto& o = G.point(G.strand(s).origin);
        PathWord c = w.child(edges[j]);
        if (o.out.size() == 1 && o.in.size() >= 2) {
          stack.emplace_back(G.strand(s).origin, std::move(c));
        } else {
          bottom_word[s] = std::move(c);
        }
      }
    }
  }

  ForestPair fp{y, {}, {}};
  for (StrandId s : order) {
    fp.domain.push_back(top_word.at(s));
    const auto it = bottom_word.find(s);
    if (it == bottom_word.end()) throw InvalidInput("diagram does not split into two forests");
    fp.range.push_back(it->second);
  }
  return fp;
}

void absorb_terminals(StrandDiagram& d) {
  auto& G = d.graph;
  for (auto& p : d.sources) {
    const auto& pt = G.point(p);
    if (pt.in.empty() && pt.out.size() == 1) {
      const StrandId s = pt.out[0];
      const PointId t = G.strand(s).terminus;
      if (is_split_like(G.point(t)) && G.point(t).in.size() == 1) {
        G.point(t).in.clear();
        G.kill_strand(s);
        G.kill_point(p);
        p = t;
      }
    }
  }
  for (auto& p : d.sinks) {
    const auto& pt = G.point(p);
    if (pt.out.empty() && pt.in.size() == 1) {
      const StrandId s = pt.in[0];
      const PointId o = G.strand(s).origin;
      if (is_merge_like(G.point(o)) && G.point(o).out.size() == 1) {
        G.point(o).out.clear();
        G.kill_strand(s);
        G.kill_point(p);
        p = o;
      }
    }
  }
}

StrandDiagram compose(const StrandDiagram& a, const StrandDiagram& b) {
  if (a.range() != b.domain()) {
    throw InvalidInput("cannot compose: range of the first diagram differs from domain of the second");
  }
  StrandDiagram d = a;
  auto& G = d.graph;
  const auto point_offset = static_cast<PointId>(G.point_capacity());
  const auto strand_offset = static_cast<StrandId>(G.strand_capacity());
  for (std::size_t i = 0; i < b.graph.point_capacity(); ++i) {
    const auto& src = b.graph.point(static_cast<PointId>(i));
    const PointId p = G.add_point(src.color, src.base);
    auto& pt = G.point(p);
    for (StrandId s : src.in) pt.in.push_back(s + strand_offset);
    for (StrandId s : src.out) pt.out.push_back(s + strand_offset);
    if (!src.alive) G.kill_point(p);
  }
  for (std::size_t i = 0; i < b.graph.strand_capacity(); ++i) {
    const auto& src = b.graph.strand(static_cast<StrandId>(i));
    const StrandId s = G.add_strand(src.origin + point_offset,
                                    src.terminus + point_offset, src.color, false);
    if (!src.alive) G.kill_strand(s);
  }

  for (std::size_t i = 0; i < a.sinks.size(); ++i) {
    const PointId t = a.sinks[i];
    const PointId u = b.sources[i] + point_offset;
    const bool t_uni = G.point(t).in.size() == 1;
    const bool u_uni = G.point(u).out.size() == 1;
    if (t_uni && u_uni) {
      G.join(G.point(t).in[0], G.point(u).out[0]);
      G.kill_point(t);
      G.kill_point(u);
    } else if (t_uni) {
      const StrandId s = G.point(t).in[0];
      G.strand(s).terminus = u;
      G.point(u).in.assign(1, s);
      G.kill_point(t);
    } else if (u_uni) {
      const StrandId s = G.point(u).out[0];
      G.strand(s).origin = t;
      G.point(t).out.assign(1, s);
      G.kill_point(u);
    } else {
      G.add_strand(t, u, G.point(t).color);
    }
  }
  d.sinks.clear();
  for (PointId p : b.sinks) d.sinks.push_back(p + point_offset);
  absorb_terminals(d);
  return d;
}

StrandDiagram invert(const StrandDiagram& d) {
  StrandDiagram out = d;
  auto& G = out.graph;
  for (std::size_t i = 0; i < G.point_capacity(); ++i) {
    auto& pt = G.point(static_cast<PointId>(i));
    std::swap(pt.in, pt.out);
  }
  for (std::size_t i = 0; i < G.strand_capacity(); ++i) {
    auto& st = G.strand(static_cast<StrandId>(i));
    std::swap(st.origin, st.terminus);
  }
  std::swap(out.sources, out.sinks);
  return out;
}

StrandDiagram conjugate_by(const StrandDiagram& h, const StrandDiagram& x) {
  return compose(compose(h, x), invert(h));
}

StrandDiagram power(const StrandDiagram& d, long long n) {
  if (d.domain() != d.range()) throw InvalidInput("power needs domain = range");
  const StrandDiagram base = n < 0 ? invert(d) : d;
  StrandDiagram acc = identity_diagram(d.domain());
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) acc = reduce(compose(acc, base));
  return acc;
}

std::vector<Redex> find_redexes(const DiagramGraph& G) {
  std::vector<Redex> out;
  for (PointId v : G.live_points()) {
    const auto& pt = G.point(v);
    if (pt.base) continue;
    if (pt.in.size() == 1 && pt.out.size() == 1) {
      out.push_back({0, v, -1});
      continue;
    }
    if (is_split_like(pt)) {
      const PointId w = G.strand(pt.out[0]).terminus;
      const auto& wt = G.point(w);
      if (w != v && is_merge_like(wt) && wt.color == pt.color && wt.in == pt.out) {
        out.push_back({1, v, w});
      }
    } else if (is_merge_like(pt) && pt.out.size() == 1) {
      const PointId w = G.strand(pt.out[0]).terminus;
      const auto& wt = G.point(w);
      if (w != v && is_split_like(wt) && wt.in.size() == 1 && wt.color == pt.color) {
        out.push_back({2, v, w});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) {
    return a.type < b.type;
  });
  return out;
}

void apply_redex(DiagramGraph& G, const Redex& r) {
  if (r.type == 0) {
    const StrandId s1 = G.point(r.v).in.at(0);
    const StrandId s2 = G.point(r.v).out.at(0);
    G.join(s1, s2);
    G.kill_point(r.v);
    return;
  }
  if (r.type == 1) {
    const auto strands = G.point(r.v).out;
    for (StrandId s : strands) G.kill_strand(s);
    const bool has_in = !G.point(r.v).in.empty();
    const bool has_out = !G.point(r.w).out.empty();
    const VertexId c = G.point(r.v).color;
    if (has_in && has_out) {
      G.join(G.point(r.v).in[0], G.point(r.w).out[0]);
      G.kill_point(r.v);
      G.kill_point(r.w);
    } else if (has_in) {
      const StrandId sv = G.point(r.v).in[0];
      G.strand(sv).terminus = r.w;
      G.point(r.w).in.assign(1, sv);
      G.kill_point(r.v);
    } else if (has_out) {
      const StrandId sw = G.point(r.w).out[0];
      G.strand(sw).origin = r.v;
      G.point(r.v).out.assign(1, sw);
      G.kill_point(r.w);
    } else {
      G.point(r.v).out.clear();
      G.point(r.w).in.clear();
      G.add_strand(r.v, r.w, c);
    }
    return;
  }
  if (r.type == 2) {
    const auto ins = G.point(r.v).in;
    const auto outs = G.point(r.w).out;
    const StrandId mid = G.point(r.v).out.at(0);
    for (std::size_t i = 0; i < ins.size(); ++i) G.join(ins[i], outs.at(i));
    G.kill_strand(mid);
    G.kill_point(r.v);
    G.kill_point(r.w);
    return;
  }
  throw InvalidInput("unknown redex type");
}

namespace {

void count(ReductionLog* log, int type) {
  if (!log) return;
  if (type == 0) ++log->type0;
  if (type == 1) ++log->type1;
  if (type == 2) ++log->type2;
}

}  // namespace

StrandDiagram reduce(const StrandDiagram& d, ReductionLog* log) {
  StrandDiagram out = d;
  for (;;) {
    absorb_terminals(out);
    const auto redexes = find_redexes(out.graph);
    if (redexes.empty()) break;
    apply_redex(out.graph, redexes.front());
    count(log, redexes.front().type);
  }
  return out;
}

StrandDiagram reduce_random(const StrandDiagram& d, std::mt19937_64& rng,
                            ReductionLog* log) {
  StrandDiagram out = d;
  for (;;) {
    absorb_terminals(out);
    const auto redexes = find_redexes(out.graph);
    if (redexes.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
    const Redex r = redexes[pick(rng)];
    apply_redex(out.graph, r);
    count(log, r.type);
  }
  return out;
}

bool is_reduced(const StrandDiagram& d) { return find_redexes(d.graph).empty(); }

std::string canonical_form(const StrandDiagram& d) {
  const auto& G = d.graph;
  std::vector<int> label(G.point_capacity(), -1);
  std::vector<PointId> order;
  std::deque<PointId> queue;
  auto visit = [&](PointId p) {
    if (label[p] >= 0) return;
    label[p] = static_cast<int>(order.size());
    order.push_back(p);
    queue.push_back(p);
  };
  for (PointId p : d.sources) visit(p);
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
  os << "|sinks:";
  for (PointId p : d.sinks) os << label[p] << ',';
  os << "|n" << G.live_point_count();
  return os.str();
}

bool isomorphic(const StrandDiagram& a, const StrandDiagram& b) {
  return canonical_form(a) == canonical_form(b);
}

bool equal(const StrandDiagram& a, const StrandDiagram& b) {
  if (a.domain() != b.domain() || a.range() != b.range()) return false;
  return canonical_form(reduce(a)) == canonical_form(reduce(b));
}

StrandDiagram compacted(const StrandDiagram& d) {
  StrandDiagram out;
  std::vector<PointId> pmap(d.graph.point_capacity(), -1);
  std::vector<StrandId> smap(d.graph.strand_capacity(), -1);
  for (PointId p : d.graph.live_points()) {
    pmap[p] = out.graph.add_point(d.graph.point(p).color, d.graph.point(p).base);
  }
  for (StrandId s : d.graph.live_strands()) {
    const auto& st = d.graph.strand(s);
    smap[s] = out.graph.add_strand(pmap[st.origin], pmap[st.terminus], st.color, false);
  }
  for (PointId p : d.graph.live_points()) {
    auto& pt = out.graph.point(pmap[p]);
    for (StrandId s : d.graph.point(p).in) pt.in.push_back(smap[s]);
    for (StrandId s : d.graph.point(p).out) pt.out.push_back(smap[s]);
  }
  for (PointId p : d.sources) out.sources.push_back(pmap[p]);
  for (PointId p : d.sinks) out.sinks.push_back(pmap[p]);
  return out;
}

namespace {

// A strand crossing a horizontal cut; `point` is the point it leads into
// (downward) or comes from (upward). A terminal split or merge crosses the
// cut as itself, with strand = -1.
struct Crossing {
  PointId point;
  StrandId strand;
};

StrandDiagram layer_diagram(const ShiftGraph& g,
                            const std::vector<VertexId>& colors,
                            const std::vector<bool>& expand) {
  StrandDiagram d;
  for (std::size_t j = 0; j < colors.size(); ++j) {
    const PointId s = d.graph.add_point(colors[j]);
    d.sources.push_back(s);
    if (!expand[j]) {
      const PointId t = d.graph.add_point(colors[j]);
      d.graph.add_strand(s, t, colors[j]);
      d.sinks.push_back(t);
      continue;
    }
    for (VertexId c : g.child_colors(colors[j])) {
      const PointId t = d.graph.add_point(c);
      d.graph.add_strand(s, t, c);
      d.sinks.push_back(t);
    }
  }
  return d;
}

}  // namespace

std::vector<GeneratorPiece> decompose_generators(const StrandDiagram& input,
                                                 const ShiftGraph& g) {
  const StrandDiagram d = reduce(input);
  const auto& G = d.graph;
  auto color_of = [&](const Crossing& c) {
    return c.strand >= 0 ? G.strand(c.strand).color : G.point(c.point).color;
  };

  std::vector<GeneratorPiece> splits;
  std::vector<Crossing> top;
  for (PointId p : d.sources) {
    const auto& pt = G.point(p);
    if (pt.out.size() >= 2) {
      top.push_back({p, -1});
    } else {
      top.push_back({G.strand(pt.out[0]).terminus, pt.out[0]});
    }
  }
  auto top_expands = [&](const Crossing& c) {
    const auto& pt = G.point(c.point);
    return c.strand < 0 || (pt.out.size() >= 2 && pt.in.size() == 1);
  };
  for (;;) {
    std::vector<bool> expand;
    std::vector<VertexId> colors;
    bool any = false;
    for (const auto& c : top) {
      colors.push_back(color_of(c));
      expand.push_back(top_expands(c));
      any = any || expand.back();
    }
    if (!any) break;
    splits.push_back({GeneratorKind::Split, layer_diagram(g, colors, expand)});
    std::vector<Crossing> next;
    for (std::size_t j = 0; j < top.size(); ++j) {
      if (!expand[j]) {
        next.push_back(top[j]);
        continue;
      }
      for (StrandId s : G.point(top[j].point).out) {
        next.push_back({G.strand(s).terminus, s});
      }
    }
    top = std::move(next);
  }

  std::vector<GeneratorPiece> merges;
  std::vector<Crossing> bottom;
  for (PointId p : d.sinks) {
    const auto& pt = G.point(p);
    if (pt.in.size() >= 2) {
      bottom.push_back({p, -1});
    } else {
      bottom.push_back({G.strand(pt.in[0]).origin, pt.in[0]});
    }
  }
  auto bottom_expands = [&](const Crossing& c) {
    const auto& pt = G.point(c.point);
    return c.strand < 0 || (pt.in.size() >= 2 && pt.out.size() == 1);
  };
  for (;;) {
    std::vector<bool> expand;
    std::vector<VertexId> colors;
    bool any = false;
    for (const auto& c : bottom) {
      colors.push_back(color_of(c));
      expand.push_back(bottom_expands(c));
      any = any || expand.back();
    }
    if (!any) break;
    merges.push_back({GeneratorKind::Merge, invert(layer_diagram(g, colors, expand))});
    std::vector<Crossing> next;
    for (std::size_t j = 0; j < bottom.size(); ++j) {
      if (!expand[j]) {
        next.push_back(bottom[j]);
        continue;
      }
      for (StrandId s : G.point(bottom[j].point).in) {
        next.push_back({G.strand(s).origin, s});
      }
    }
    bottom = std::move(next);
  }

  std::vector<std::size_t> perm(top.size());
  std::vector<VertexId> colors;
  bool trivial = true;
  for (std::size_t j = 0; j < top.size(); ++j) {
    colors.push_back(color_of(top[j]));
    const auto it = std::find_if(bottom.begin(), bottom.end(), [&](const Crossing& c) {
      return c.strand == top[j].strand;
    });
    if (it == bottom.end()) throw InvalidInput("diagram does not separate into layers");
    perm[j] = static_cast<std::size_t>(it - bottom.begin());
    trivial = trivial && perm[j] == j;
  }

  std::vector<GeneratorPiece> out = std::move(splits);
  if (!trivial || (out.empty() && merges.empty())) {
    out.push_back({GeneratorKind::Permutation, permutation_diagram(colors, perm)});
  }
  for (auto it = merges.rbegin(); it != merges.rend(); ++it) out.push_back(std::move(*it));
  return out;
}

bool is_group_element(const StrandDiagram& d, const BaseTuple& y) {
  return d.domain() == y.roots && d.range() == y.roots;
}

std::size_t split_merge_count(const StrandDiagram& d) {
  std::size_t n = 0;
  for (PointId p : d.graph.live_points()) {
    const auto& pt = d.graph.point(p);
    if (is_split_like(pt) || is_merge_like(pt)) ++n;
  }
  return n;
}

}  // namespace shiftconj
