#pragma once

// The loops semigroup: generators L(c, n) for colors c and windings
// 1 <= n <= N, one relation L(c_1, n) + ... + L(c_k, n) = L(c, n) for every
// non-isolated vertex c with children c_1, ..., c_k.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/graph.hpp"

namespace shiftconj {

using LoopVector = std::vector<unsigned>;

struct LoopGenerator {
  VertexId color = 0;
  std::size_t winding = 1;
};

struct Relation {
  LoopVector lhs;  // sum of the children
  LoopVector rhs;  // the parent
  VertexId vertex = 0;
  std::size_t winding = 1;
};

class Presentation {
 public:
  Presentation(const ShiftGraph& g, std::size_t max_winding);

  std::size_t max_winding() const { return max_winding_; }
  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<LoopGenerator>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  // Generators are ordered by (winding, vertex).
  std::size_t index(VertexId color, std::size_t winding) const;

  LoopVector to_vector(const LoopMultiset& loops) const;
  LoopMultiset to_multiset(const LoopVector& v) const;
  std::string format(const LoopVector& v) const;
  // One relation per line: L(c1,n)+L(c2,n)=L(c,n).
  std::string dump() const;

 private:
  std::vector<std::string> names_;
  std::size_t max_winding_;
  std::size_t vertices_;
  std::vector<LoopGenerator> generators_;
  std::vector<Relation> relations_;
};

// Throws InvalidInput for N = 0.
Presentation presentation_from_graph(const ShiftGraph& g, std::size_t max_winding);

// Graded lexicographic comparison, coordinate 0 most significant.
bool grlex_less(const LoopVector& a, const LoopVector& b);

struct RewriteRule {
  LoopVector lhs;
  LoopVector rhs;
};

// A confluent binomial rewriting system for the congruence of a
// presentation, obtained by completion.
class CompletedSystem {
 public:
  explicit CompletedSystem(const Presentation& p, std::size_t max_rules = 20000);

  LoopVector normal_form(LoopVector v) const;
  const std::vector<RewriteRule>& rules() const { return rules_; }

 private:
  std::vector<RewriteRule> rules_;
};

// Throws LimitExceeded("semigroup completion") when completion exceeds its
// rule limit.
bool decide_equal(const LoopVector& a, const LoopVector& b, const Presentation& p);
bool decide_equal(const LoopMultiset& a, const LoopMultiset& b, const ShiftGraph& g);

struct BfsOutcome {
  bool equal = false;
  // States from a to b, each one relation application apart.
  std::vector<LoopVector> path;
  std::size_t explored = 0;
};

// Bidirectional search applying relations both ways, never exceeding total
// degree `cap`. Throws InvalidInput when cap is below the degree of a or b.
BfsOutcome bfs_equal(const LoopVector& a, const LoopVector& b, const Presentation& p,
                     std::size_t cap);

// Throws InvalidInput on an empty multiset.
std::size_t max_winding(const LoopMultiset& loops);

std::size_t total_degree(const LoopVector& v);

}  // namespace shiftconj
