#pragma once

// Gamma-strand diagrams. Points and strands live in flat vectors; removed
// entries are tombstoned so ids stay stable across rewriting steps.
//
// Rotation is kept in logical form: for a split, out[i] is the strand of the
// i-th child color; for a merge, in[i] is the strand of the i-th child color.
// The clockwise cyclic order of the drawings is recovered by rotation().

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shiftconj/forest_pair.hpp"
#include "shiftconj/graph.hpp"

namespace shiftconj {

using PointId = int;
using StrandId = int;

struct DiagramPoint {
  VertexId color = 0;
  std::vector<StrandId> in;
  std::vector<StrandId> out;
  bool base = false;
  bool alive = true;
};

struct DiagramStrand {
  PointId origin = 0;
  PointId terminus = 0;
  VertexId color = 0;
  bool alive = true;
};

enum class PointKind {
  UnivalentSource,
  UnivalentSink,
  SplitSource,
  MergeSink,
  Split,
  Merge,
  Degenerate,
  Base,
  Invalid,
};

const char* to_string(PointKind k);

class DiagramGraph {
 public:
  PointId add_point(VertexId color, bool base = false);
  // Appends the strand to origin.out and terminus.in unless attach is false,
  // in which case the caller places it in the lists.
  StrandId add_strand(PointId origin, PointId terminus, VertexId color,
                      bool attach = true);

  const DiagramPoint& point(PointId p) const { return points_.at(p); }
  DiagramPoint& point(PointId p) { return points_.at(p); }
  const DiagramStrand& strand(StrandId s) const { return strands_.at(s); }
  DiagramStrand& strand(StrandId s) { return strands_.at(s); }

  std::size_t point_capacity() const { return points_.size(); }
  std::size_t strand_capacity() const { return strands_.size(); }
  std::vector<PointId> live_points() const;
  std::vector<StrandId> live_strands() const;
  std::size_t live_point_count() const;

  void kill_point(PointId p);
  void kill_strand(StrandId s);
  static void replace(std::vector<StrandId>& list, StrandId from, StrandId to);

  // s1 ends and s2 starts at a point the caller removes; s1 takes over the
  // far end of s2 and s2 dies.
  void join(StrandId s1, StrandId s2);
  // Inserts a point on s. s keeps its origin and now ends at the new point;
  // a fresh strand leaves it. Returns the new point.
  PointId subdivide(StrandId s, bool base);

  // Cyclic clockwise order of incident strands.
  std::vector<StrandId> rotation(PointId p) const;

 private:
  std::vector<DiagramPoint> points_;
  std::vector<DiagramStrand> strands_;
};

struct StrandDiagram {
  DiagramGraph graph;
  std::vector<PointId> sources;
  std::vector<PointId> sinks;

  std::vector<VertexId> domain() const;
  std::vector<VertexId> range() const;
  PointKind kind(PointId p) const;
};

std::vector<std::string> validate_strand_diagram(const StrandDiagram& d,
                                                 const ShiftGraph& g);

StrandDiagram identity_diagram(const std::vector<VertexId>& colors);
// Source j is joined to sink perm[j].
StrandDiagram permutation_diagram(const std::vector<VertexId>& colors,
                                  const std::vector<std::size_t>& perm);
// Merges positions [index, index + k) of `colors` into one point of color c;
// the block must list the child colors of c.
StrandDiagram merge_diagram(const ShiftGraph& g,
                            const std::vector<VertexId>& colors,
                            std::size_t index, VertexId c);
StrandDiagram split_diagram(const ShiftGraph& g,
                            const std::vector<VertexId>& colors,
                            std::size_t index);

StrandDiagram from_forest_pair(const ShiftGraph& g, const ForestPair& fp);
// Requires a reduced diagram with domain = range.
ForestPair to_forest_pair(const StrandDiagram& d, const ShiftGraph& g,
                          const BaseTuple& y);

StrandDiagram compose(const StrandDiagram& a, const StrandDiagram& b);
StrandDiagram invert(const StrandDiagram& d);
// compose(compose(h, x), invert(h)).
StrandDiagram conjugate_by(const StrandDiagram& h, const StrandDiagram& x);
StrandDiagram power(const StrandDiagram& d, long long n);

struct Redex {
  int type = 0;
  PointId v = 0;
  PointId w = -1;
  bool operator==(const Redex&) const = default;
};

// Redexes present in the graph, in increasing order of v. Base points never
// count as degenerate points, and strands between the points of a redex are
// direct, so closed diagrams reuse this.
std::vector<Redex> find_redexes(const DiagramGraph& g);
// Rewrites in place. Terminal points keep their ids, so source and sink
// lists stay valid.
void apply_redex(DiagramGraph& g, const Redex& r);

struct ReductionLog {
  std::size_t type0 = 0;
  std::size_t type1 = 0;
  std::size_t type2 = 0;
  std::size_t total() const { return type0 + type1 + type2; }
};

// Fixed order: every type 0 redex first, then the first type 1, then the
// first type 2, repeated.
StrandDiagram reduce(const StrandDiagram& d, ReductionLog* log = nullptr);
StrandDiagram reduce_random(const StrandDiagram& d, std::mt19937_64& rng,
                            ReductionLog* log = nullptr);
bool is_reduced(const StrandDiagram& d);

// Serialization invariant under relabeling of points and strands.
std::string canonical_form(const StrandDiagram& d);
bool isomorphic(const StrandDiagram& a, const StrandDiagram& b);
bool equal(const StrandDiagram& a, const StrandDiagram& b);

// Identifies a univalent source feeding a split with a split-source and a
// merge feeding a univalent sink with a merge-sink.
void absorb_terminals(StrandDiagram& d);
// Drops tombstones and renumbers points in storage order.
StrandDiagram compacted(const StrandDiagram& d);

enum class GeneratorKind { Permutation, Split, Merge };
struct GeneratorPiece {
  GeneratorKind kind;
  StrandDiagram diagram;
};
std::vector<GeneratorPiece> decompose_generators(const StrandDiagram& d,
                                                 const ShiftGraph& g);

bool is_group_element(const StrandDiagram& d, const BaseTuple& y);

std::size_t split_merge_count(const StrandDiagram& d);

}  // namespace shiftconj
