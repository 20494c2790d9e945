#pragma once

// Closed strand diagrams: sources glued to sinks along an ordered base line.
// Every move returns the rewritten diagram together with a Move record from
// which the conjugating strand diagram can be rebuilt.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "shiftconj/strand_diagram.hpp"

namespace shiftconj {

struct ClosedDiagram {
  DiagramGraph graph;
  std::vector<PointId> base_line;

  std::vector<VertexId> colors() const;
};

// (color, winding) -> count.
using LoopMultiset = std::map<std::pair<VertexId, std::size_t>, std::size_t>;

enum class MoveKind {
  ShiftExpand,
  ShiftReduce,
  Permute,
  Reduce0,
  Reduce1,
  Reduce2,
  Type3Reduce,
  Type3Expand,
};

enum class ShiftThrough { Split, Merge };

const char* to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::Permute;
  // Shifts: base line position and number of base points on the wide side.
  // Type 3: start position, loop count d and winding k.
  std::size_t index = 0;
  std::size_t width = 0;
  std::size_t winding = 0;
  ShiftThrough through = ShiftThrough::Split;
  // Color of the shifted split/merge, or of the type 3 vertex.
  VertexId color = -1;
  // Permute: new base_line[j] = old base_line[perm[j]].
  std::vector<std::size_t> perm;
  Redex redex;
  std::vector<VertexId> colors_before;
  std::vector<VertexId> colors_after;
};

struct ConjugationTrace {
  std::vector<VertexId> initial_colors;
  std::vector<Move> moves;
};

std::vector<std::string> validate_closed_diagram(const ClosedDiagram& c,
                                                 const ShiftGraph& g);

ClosedDiagram close(const StrandDiagram& d);
StrandDiagram cut(const ClosedDiagram& c);

// Expanding shift at base point `index`; when both a split below and a merge
// above are available, `through` picks one (split by default).
std::pair<ClosedDiagram, Move> shift_expand(
    const ClosedDiagram& c, std::size_t index,
    std::optional<ShiftThrough> through = std::nullopt);
// Reducing shift of the `width` consecutive base points starting at `index`.
std::pair<ClosedDiagram, Move> shift_reduce(const ClosedDiagram& c,
                                            std::size_t index,
                                            std::size_t width);
std::pair<ClosedDiagram, Move> permute_base(const ClosedDiagram& c,
                                            const std::vector<std::size_t>& perm);
// One type 0/1/2 reduction whose strands carry no base points.
std::optional<std::pair<ClosedDiagram, Move>> reduce_closed_step(
    const ClosedDiagram& c);
// Replaces the d interleaved loops of winding k starting at `start` by one
// loop of winding k colored by v. When v is omitted the first vertex whose
// child colors match is used.
std::pair<ClosedDiagram, Move> type3_reduce(const ClosedDiagram& c,
                                            const ShiftGraph& g,
                                            std::size_t start, std::size_t d,
                                            std::size_t k,
                                            std::optional<VertexId> v = std::nullopt);
// Inverse of type3_reduce: the loop occupying [start, start + k) in cycle
// order is replaced by interleaved loops of its child colors.
std::pair<ClosedDiagram, Move> type3_expand(const ClosedDiagram& c,
                                            const ShiftGraph& g,
                                            std::size_t start, std::size_t k);

// Applies a recorded move. Moves carry point ids, so replay starting from
// the same diagram is deterministic.
ClosedDiagram apply_move(const ClosedDiagram& c, const ShiftGraph& g,
                         const Move& m);
ClosedDiagram replay(const ClosedDiagram& c, const ShiftGraph& g,
                     const ConjugationTrace& t);

// G with cut(after) equal to compose(compose(G, cut(before)), invert(G)).
StrandDiagram move_conjugator(const Move& m, const ShiftGraph& g);
// Product of all move conjugators, latest first.
StrandDiagram trace_conjugator(const ConjugationTrace& t, const ShiftGraph& g);

struct SemiReduceOptions {
  // Maximum number of expanding shifts spent unlocking one redex; nullopt
  // means unlimited.
  std::optional<std::size_t> budget;
  // When set, redexes are chosen uniformly at random.
  std::mt19937_64* rng = nullptr;
};

struct SemiReduceResult {
  ClosedDiagram diagram;
  ConjugationTrace trace;
  ReductionLog log;
  std::size_t max_unlock_expansions = 0;
};

// Throws LimitExceeded("similarity budget") when some redex of the
// similarity class needs more expanding shifts than the budget allows.
SemiReduceResult semi_reduce(const ClosedDiagram& c,
                             const SemiReduceOptions& options = {});

// Unlockable redexes: type 0 anywhere, type 2 through any number of base
// points, type 1 when every joining chain has the same number of base points.
struct Pattern {
  int type = 0;
  PointId v = -1;
  PointId w = -1;
  std::size_t base_points = 0;
};
std::vector<Pattern> unlockable_patterns(const ClosedDiagram& c);
bool is_semi_reduced(const ClosedDiagram& c);

struct Parts {
  ClosedDiagram split_merge;
  LoopMultiset loops;
};
Parts decompose_parts(const ClosedDiagram& c);
LoopMultiset loop_multiset(const ClosedDiagram& c);

// Connected components (undirected), each sorted by point id.
std::vector<std::vector<PointId>> components(const DiagramGraph& g);

std::string canonical_form(const ClosedDiagram& c);
// Invariant under relabeling and under base line permutations.
std::string similarity_key(const ClosedDiagram& c);

std::size_t non_base_point_count(const ClosedDiagram& c);

}  // namespace shiftconj
