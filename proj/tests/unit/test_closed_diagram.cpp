#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/errors.hpp"
#include "shiftconj/testkit.hpp"
#include "support.hpp"

using namespace shiftconj;

namespace {

bool certified(const ShiftGraph& g, const ClosedDiagram& before, const ClosedDiagram& after,
               const Move& m) {
  return equal(cut(after), conjugate_by(move_conjugator(m, g), cut(before)));
}

// One random move among those applicable to c.
std::pair<ClosedDiagram, Move> random_move(const ClosedDiagram& c, std::mt19937_64& rng) {
  std::vector<std::pair<ClosedDiagram, Move>> options;
  for (std::size_t i = 0; i < c.base_line.size(); ++i) {
    for (auto dir : {ShiftThrough::Split, ShiftThrough::Merge}) {
      try {
        options.push_back(shift_expand(c, i, dir));
      } catch (const InvalidInput&) {
      }
    }
    for (std::size_t w = 2; w <= 4 && i + w <= c.base_line.size(); ++w) {
      try {
        options.push_back(shift_reduce(c, i, w));
      } catch (const InvalidInput&) {
      }
    }
  }
  if (auto step = reduce_closed_step(c)) {
    // Reductions are rare among the shifts; weight them up.
    for (int k = 0; k < 4; ++k) options.push_back(*step);
  }
  std::vector<std::size_t> perm(c.base_line.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  options.push_back(permute_base(c, perm));
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  return options[pick(rng)];
}

ClosedDiagram loops(const std::vector<VertexId>& colors, const std::vector<std::size_t>& perm) {
  return close(permutation_diagram(colors, perm));
}

}  // namespace

TEST_CASE("closing and cutting are inverse") {
  const auto gf = fixtures::graph("three_color.graph");
  std::mt19937_64 rng(31);
  testkit::GeneratorConfig cfg;
  for (int i = 0; i < 30; ++i) {
    const auto d = from_forest_pair(gf.graph, testkit::random_element(gf.graph, gf.base, rng, cfg));
    const auto c = close(d);
    CHECK(validate_closed_diagram(c, gf.graph).empty());
    CHECK(c.base_line.size() == gf.base.size());
    CHECK(c.colors() == gf.base.roots);
    CHECK(equal(cut(c), d));
  }
  CHECK_THROWS_AS(close(split_diagram(gf.graph, {*gf.graph.find_vertex("B")}, 0)), InvalidInput);
}

TEST_CASE("every move is a certified conjugation") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  std::mt19937_64 rng(32);
  testkit::GeneratorConfig cfg;
  cfg.degenerate_probability = 0.3;
  std::set<MoveKind> seen;
  for (int walk = 0; walk < 40; ++walk) {
    const auto start = close(from_forest_pair(g, testkit::random_element(g, gf.base, rng, cfg)));
    ConjugationTrace trace{start.colors(), {}};
    ClosedDiagram c = start;
    for (int step = 0; step < 12; ++step) {
      auto [next, m] = random_move(c, rng);
      seen.insert(m.kind);
      CHECK(validate_closed_diagram(next, g).empty());
      CHECK(certified(g, c, next, m));
      CHECK(canonical_form(apply_move(c, g, m)) == canonical_form(next));
      CHECK(similarity_key(c) != "");
      trace.moves.push_back(m);
      c = std::move(next);
    }
    CHECK(canonical_form(replay(start, g, trace)) == canonical_form(c));
    const auto H = trace_conjugator(trace, g);
    CHECK(equal(cut(c), conjugate_by(H, cut(start))));
  }
  for (auto k : {MoveKind::ShiftExpand, MoveKind::ShiftReduce, MoveKind::Permute,
                 MoveKind::Reduce0, MoveKind::Reduce1, MoveKind::Reduce2}) {
    INFO(to_string(k));
    CHECK(seen.count(k));
  }
}

TEST_CASE("type 3 moves on loops") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B"), G = *g.find_vertex("G");

  // Loops G and R of winding 3, interleaved: G R G R G R.
  const auto c = loops({G, R, G, R, G, R}, {2, 3, 4, 5, 0, 1});
  CHECK(loop_multiset(c) == LoopMultiset{{{G, 3}, 1}, {{R, 3}, 1}});
  auto [reduced, m] = type3_reduce(c, g, 0, 2, 3);
  CHECK(m.kind == MoveKind::Type3Reduce);
  CHECK(loop_multiset(reduced) == LoopMultiset{{{B, 3}, 1}});
  CHECK(certified(g, c, reduced, m));

  auto [expanded, e] = type3_expand(reduced, g, 0, 3);
  CHECK(e.kind == MoveKind::Type3Expand);
  CHECK(loop_multiset(expanded) == loop_multiset(c));
  CHECK(certified(g, reduced, expanded, e));

  // Not interleaved: G G R R.
  const auto side_by_side = loops({G, G, R, R}, {1, 0, 3, 2});
  CHECK_THROWS_AS(type3_reduce(side_by_side, g, 0, 2, 2), InvalidInput);
  // R is isolated, so its loop cannot expand.
  CHECK_THROWS_AS(type3_expand(loops({R}, {0}), g, 0, 1), InvalidInput);
}

TEST_CASE("the fixture element is torsion of order six") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), G = *g.find_vertex("G");
  const auto sigma = from_forest_pair(g, fixtures::element("sigma.elem", gf));
  const auto id = identity_diagram(gf.base.roots);
  for (long long k = 1; k < 6; ++k) CHECK_FALSE(testkit::semantic_equal(g, gf.base, power(sigma, k), id));
  CHECK(testkit::semantic_equal(g, gf.base, power(sigma, 6), id));

  // Torsion means the semi-reduced diagram is all loops, with orders 2 and 3.
  const auto semi = semi_reduce(close(sigma), {std::nullopt, nullptr});
  CHECK(is_semi_reduced(semi.diagram));
  const auto parts = decompose_parts(semi.diagram);
  CHECK(parts.split_merge.base_line.empty());
  CHECK(parts.loops == LoopMultiset{{{R, 2}, 1}, {{G, 3}, 1}});
  CHECK(equal(cut(semi.diagram), conjugate_by(trace_conjugator(semi.trace, g), sigma)));
}

TEST_CASE("semi-reduction is certified and respects the budget") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  std::mt19937_64 rng(33);
  testkit::GeneratorConfig cfg;
  cfg.max_expansions = 5;
  std::size_t over_zero = 0;
  for (int i = 0; i < 60; ++i) {
    const auto d = reduce(from_forest_pair(g, testkit::random_element(g, gf.base, rng, cfg)));
    const auto c = close(d);
    const auto semi = semi_reduce(c, {std::nullopt, nullptr});
    CHECK(is_semi_reduced(semi.diagram));
    CHECK(validate_closed_diagram(semi.diagram, g).empty());
    CHECK(canonical_form(replay(c, g, semi.trace)) == canonical_form(semi.diagram));
    CHECK(equal(cut(semi.diagram), conjugate_by(trace_conjugator(semi.trace, g), d)));
    if (semi.max_unlock_expansions > 0) {
      ++over_zero;
      try {
        semi_reduce(c, {0, nullptr});
        FAIL("a zero budget should not unlock this diagram");
      } catch (const LimitExceeded& e) {
        CHECK(e.limit() == "similarity budget");
      }
    }
    const auto again = semi_reduce(c, {semi.max_unlock_expansions, nullptr});
    CHECK(is_semi_reduced(again.diagram));
  }
  CHECK(over_zero > 0);
}

TEST_CASE("similarity keys ignore base order and labels") {
  const auto gf = fixtures::graph("three_color.graph");
  std::mt19937_64 rng(34);
  testkit::GeneratorConfig cfg;
  for (int i = 0; i < 20; ++i) {
    const auto c = close(from_forest_pair(gf.graph, testkit::random_element(gf.graph, gf.base, rng, cfg)));
    std::vector<std::size_t> perm(c.base_line.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = permute_base(c, perm).first;
    CHECK(similarity_key(p) == similarity_key(c));
    CHECK(canonical_form(close(compacted(cut(c)))) == canonical_form(c));
  }
}

TEST_CASE("components and parts") {
  const auto gf = fixtures::graph("three_color.graph");
  const VertexId R = *gf.graph.find_vertex("R"), G = *gf.graph.find_vertex("G");
  const auto c = loops({R, G, G}, {0, 2, 1});
  CHECK(components(c.graph).size() == 2);
  CHECK(loop_multiset(c) == LoopMultiset{{{R, 1}, 1}, {{G, 2}, 1}});
  CHECK(non_base_point_count(c) == 0);
  CHECK(unlockable_patterns(c).empty());
}
