#pragma once

// Conjugacy of group elements given as strand diagrams with domain = range.
//
// Step 1 semi-reduces both closed diagrams. Step 2 compares the split-merge
// parts: base points are erased into per-chain counts, and two parts are
// similar iff some color and rotation preserving isomorphism carries one
// count vector to the other up to an integer coboundary. Step 3 compares the
// loop parts in the loops semigroup.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/integer_linear.hpp"
#include "shiftconj/loops_semigroup.hpp"

namespace shiftconj {

// A maximal strand run between two split/merge points; the base points on
// it are listed from origin to terminus.
struct SkeletonChain {
  std::size_t origin = 0;
  std::size_t origin_slot = 0;
  std::size_t terminus = 0;
  std::size_t terminus_slot = 0;
  VertexId color = 0;
  std::vector<PointId> base_points;
};

struct SkeletonPoint {
  PointId id = -1;
  VertexId color = 0;
  bool split = true;
  std::vector<std::size_t> in;
  std::vector<std::size_t> out;
};

struct SplitMergeSkeleton {
  std::vector<SkeletonPoint> points;
  std::vector<SkeletonChain> chains;

  std::size_t cocycle(std::size_t chain) const { return chains[chain].base_points.size(); }
  // Connected components as lists of point indices.
  std::vector<std::vector<std::size_t>> components() const;
};

// Throws InvalidInput when a non-base point is neither a split nor a merge.
SplitMergeSkeleton skeleton(const ClosedDiagram& part);

struct SplitMergeWitness {
  // Point index of A -> point index of B.
  std::vector<std::size_t> point_map;
  // Forward pushes per point of A, nonnegative with minimum 0 on every
  // component: cocycle(A) + coboundary(potential) = cocycle(B) o point_map.
  IntVector potential;
};

std::optional<SplitMergeWitness> compare_split_merge(const SplitMergeSkeleton& a,
                                                     const SplitMergeSkeleton& b);

struct ConjugacyOptions {
  // Expanding shifts allowed per unlocked redex; nullopt is unlimited.
  std::optional<std::size_t> budget = 2;
  // Degree cap of the breadth-first loop search used for witnesses.
  std::size_t semigroup_cap = 12;
  bool witness = false;
  std::mt19937_64* rng = nullptr;
};

struct ConjugacyVerdict {
  bool conjugate = false;
  // 0: signatures differ, 2: split-merge parts differ, 3: loop parts differ.
  std::optional<int> step_failed;
  std::string reason;
  SemiReduceResult semi_f;
  SemiReduceResult semi_g;
  LoopMultiset loops_f;
  LoopMultiset loops_g;
  // Step 2 witness from the skeleton of g to the skeleton of f.
  std::optional<SplitMergeWitness> split_merge;
  std::optional<StrandDiagram> witness;
};

// Throws InvalidInput when f or g has domain != range, and LimitExceeded
// when a limit is hit.
ConjugacyVerdict is_conjugate(const StrandDiagram& f, const StrandDiagram& g,
                              const ShiftGraph& graph, const ConjugacyOptions& options = {});

// h with equal(conjugate_by(h, g), f), or nullopt when the loop parts could
// not be connected within `semigroup_cap`.
std::optional<StrandDiagram> conjugator_witness(const StrandDiagram& f, const StrandDiagram& g,
                                                const ShiftGraph& graph,
                                                const ConjugacyVerdict& verdict,
                                                std::size_t semigroup_cap);

}  // namespace shiftconj
