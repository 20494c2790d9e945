#include <catch_amalgamated.hpp>

#include <random>

#include "shiftconj/errors.hpp"
#include "shiftconj/loops_semigroup.hpp"
#include "support.hpp"

using namespace shiftconj;

TEST_CASE("presentation of the fixture graph") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B"), G = *g.find_vertex("G");
  const Presentation p(g, 2);
  CHECK(p.generator_count() == 6);
  // R is isolated and contributes no relation.
  CHECK(p.relations().size() == 4);
  CHECK(p.index(R, 1) < p.index(R, 2));
  CHECK(p.dump() ==
        "L(R,1)+L(G,1)=L(B,1)\n"
        "L(B,1)+L(G,1)=L(G,1)\n"
        "L(R,2)+L(G,2)=L(B,2)\n"
        "L(B,2)+L(G,2)=L(G,2)\n");
  const LoopMultiset m{{{B, 1}, 2}, {{G, 2}, 1}};
  CHECK(p.to_multiset(p.to_vector(m)) == m);
  CHECK(p.format(p.to_vector(m)) == "2*L(B,1)+L(G,2)");
  CHECK(p.format(LoopVector(p.generator_count(), 0)) == "0");
  CHECK_THROWS_AS(presentation_from_graph(g, 0), InvalidInput);
  CHECK_THROWS_AS(p.index(R, 3), InvalidInput);
  CHECK_THROWS_AS(max_winding(LoopMultiset{}), InvalidInput);
}

TEST_CASE("grlex order") {
  CHECK(grlex_less({0, 1}, {2, 0}));
  CHECK(grlex_less({0, 2}, {1, 1}));
  CHECK_FALSE(grlex_less({1, 1}, {1, 1}));
  CHECK(total_degree({3, 0, 2}) == 5);
}

TEST_CASE("equalities in the fixture graph semigroup") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B"), G = *g.find_vertex("G");
  CHECK(decide_equal(LoopMultiset{{{G, 1}, 1}, {{R, 1}, 1}}, LoopMultiset{{{B, 1}, 1}}, g));
  CHECK(decide_equal(LoopMultiset{{{G, 2}, 1}, {{B, 2}, 3}}, LoopMultiset{{{G, 2}, 1}}, g));
  CHECK_FALSE(decide_equal(LoopMultiset{{{R, 1}, 1}}, LoopMultiset{{{G, 1}, 1}}, g));
  // Windings never mix.
  CHECK_FALSE(decide_equal(LoopMultiset{{{B, 1}, 1}}, LoopMultiset{{{B, 2}, 1}}, g));
  CHECK(decide_equal(LoopMultiset{}, LoopMultiset{}, g));
  CHECK_FALSE(decide_equal(LoopMultiset{}, LoopMultiset{{{B, 1}, 1}}, g));
}

TEST_CASE("non-confluent presentations") {
  const auto left = fixtures::graph("two_color.graph");
  const VertexId lR = *left.graph.find_vertex("R"), lB = *left.graph.find_vertex("B");
  CHECK(decide_equal(LoopMultiset{{{lR, 1}, 1}}, LoopMultiset{{{lB, 1}, 1}}, left.graph));

  const auto right = fixtures::graph("two_color_wide.graph");
  const VertexId R = *right.graph.find_vertex("R"), B = *right.graph.find_vertex("B");
  const Presentation p(right.graph, 1);
  const CompletedSystem sys(p);
  const auto a = p.to_vector({{{R, 1}, 5}, {{B, 1}, 5}});
  const auto b = p.to_vector({{{R, 1}, 1}});
  const auto c = p.to_vector({{{R, 1}, 2}, {{B, 1}, 2}});
  CHECK(sys.normal_form(a) == sys.normal_form(b));
  CHECK(sys.normal_form(b) == sys.normal_form(c));
  const auto bfs = bfs_equal(c, b, p, 12);
  REQUIRE(bfs.equal);
  CHECK(bfs.path.front() == c);
  CHECK(bfs.path.back() == b);
  CHECK_THROWS_AS(bfs_equal(a, b, p, 3), InvalidInput);
}

TEST_CASE("completion limit") {
  const auto gf = fixtures::graph("two_color_wide.graph");
  const Presentation p(gf.graph, 3);
  try {
    CompletedSystem sys(p, 1);
    FAIL("completion should not fit in one rule");
  } catch (const LimitExceeded& e) {
    CHECK(e.limit() == "semigroup completion");
  }
}

TEST_CASE("completion agrees with breadth-first search") {
  std::mt19937_64 rng(51);
  for (const char* name : {"three_color.graph", "two_color.graph", "two_color_wide.graph"}) {
    const auto gf = fixtures::graph(name);
    const Presentation p(gf.graph, 2);
    const CompletedSystem sys(p);
    std::uniform_int_distribution<std::size_t> gen(0, p.generator_count() - 1), deg(1, 4);
    auto random_vec = [&] {
      LoopVector v(p.generator_count(), 0);
      for (std::size_t k = deg(rng); k > 0; --k) ++v[gen(rng)];
      return v;
    };
    for (int i = 0; i < 60; ++i) {
      const auto a = random_vec();
      const auto b = random_vec();
      const auto na = sys.normal_form(a);
      CHECK(sys.normal_form(na) == na);
      const bool algebraic = decide_equal(a, b, p);
      CHECK(algebraic == (na == sys.normal_form(b)));
      const auto bfs = bfs_equal(a, b, p, 10);
      // A path found by search is a proof; the converse is capped.
      if (bfs.equal) CHECK(algebraic);
      if (!algebraic) CHECK_FALSE(bfs.equal);
      // Each path step applies exactly one relation.
      for (std::size_t k = 1; k < bfs.path.size(); ++k) {
        bool one = false;
        for (const auto& r : p.relations()) {
          for (int dir = 0; dir < 2 && !one; ++dir) {
            const auto& from = dir == 0 ? r.lhs : r.rhs;
            const auto& to = dir == 0 ? r.rhs : r.lhs;
            bool fits = true;
            LoopVector next = bfs.path[k - 1];
            for (std::size_t j = 0; j < next.size(); ++j) {
              fits = fits && next[j] >= from[j];
              next[j] = next[j] - from[j] + to[j];
            }
            one = fits && next == bfs.path[k];
          }
        }
        CHECK(one);
      }
    }
  }
}
