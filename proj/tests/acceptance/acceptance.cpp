// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shiftconj/closed_diagram.hpp"
#include "shiftconj/conjugacy.hpp"
#include "shiftconj/errors.hpp"
#include "shiftconj/io.hpp"
#include "shiftconj/loops_semigroup.hpp"
#include "shiftconj/strand_diagram.hpp"
#include "shiftconj/testkit.hpp"
#include "support.hpp"

using namespace shiftconj;
namespace tk = shiftconj::testkit;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f ms", ms);
  return buf;
}

ClosedDiagram loops_diagram(const std::vector<VertexId>& colors,
                            const std::vector<std::size_t>& perm) {
  return close(permutation_diagram(colors, perm));
}

bool conj_certified(const StrandDiagram& gconj, const ClosedDiagram& before,
                    const ClosedDiagram& after) {
  return equal(cut(after), conjugate_by(gconj, cut(before)));
}

// Winding one loops: bring a child-ordered block to the front and reduce it
// through v. Returns nullopt when the loop part lacks the children of v.
std::optional<ClosedDiagram> reduce_winding_one(const ClosedDiagram& c, const ShiftGraph& g,
                                                VertexId v) {
  const auto colors = c.colors();
  std::vector<bool> used(colors.size(), false);
  std::vector<std::size_t> perm;
  for (VertexId child : g.child_colors(v)) {
    bool found = false;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (!used[i] && colors[i] == child) {
        used[i] = true;
        perm.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  const std::size_t d = perm.size();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (!used[i]) perm.push_back(i);
  }
  auto permuted = permute_base(c, perm).first;
  return type3_reduce(permuted, g, 0, d, 1, v).first;
}

Outcome ac1() {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const auto sigma = from_forest_pair(g, fixtures::element("sigma.elem", gf));
  const auto expected = reduce(from_forest_pair(g, fixtures::element("sigma_squared.elem", gf)));
  const auto t0 = Clock::now();
  ReductionLog log;
  const auto square = reduce(compose(sigma, sigma), &log);
  const double ms = ms_since(t0);
  const bool same = canonical_form(square) == canonical_form(expected);
  std::ostringstream os;
  os << "canonical match " << (same ? "yes" : "no") << ", type2 " << log.type2 << ", type1 "
     << log.type1 << ", type0 " << log.type0 << ", " << fmt_ms(ms);
  return {same && log.type2 == 1 && ms < 10.0, os.str()};
}

Outcome ac2() {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B"), G = *g.find_vertex("G");
  const auto t0 = Clock::now();
  // Two winding 2 loops sitting side by side.
  const auto start = loops_diagram({G, G, R, R}, {1, 0, 3, 2});
  auto [interleaved, pmove] = permute_base(start, {0, 2, 1, 3});
  auto [reduced, rmove] = type3_reduce(interleaved, g, 0, 2, 2);
  const double ms = ms_since(t0);
  const LoopMultiset before{{{G, 2}, 1}, {{R, 2}, 1}};
  const LoopMultiset after{{{B, 2}, 1}};
  const bool ok_before = loop_multiset(start) == before && loop_multiset(interleaved) == before;
  const bool ok_after = loop_multiset(reduced) == after;
  const bool certified = conj_certified(move_conjugator(pmove, g), start, interleaved) &&
                         conj_certified(move_conjugator(rmove, g), interleaved, reduced);
  std::ostringstream os;
  os << print_loops(loop_multiset(interleaved), g) << " -> " << print_loops(loop_multiset(reduced), g)
     << ", winding kept " << (rmove.winding == 2 ? "yes" : "no") << ", conjugators certified "
     << (certified ? "yes" : "no") << ", " << fmt_ms(ms);
  return {ok_before && ok_after && rmove.winding == 2 && certified && ms < 10.0, os.str()};
}

Outcome ac3() {
  const auto gf = fixtures::graph("two_color.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B");
  const auto t0 = Clock::now();
  const auto start = close(identity_diagram({R, B}));
  const auto via_r = type3_reduce(start, g, 0, 2, 1, R).first;
  const auto via_b = type3_reduce(start, g, 0, 2, 1, B).first;
  const LoopMultiset lr{{{R, 1}, 1}}, lb{{{B, 1}, 1}};
  const bool distinct = loop_multiset(via_r) == lr && loop_multiset(via_b) == lb;
  const bool eq = decide_equal(lr, lb, g);
  const double ms = ms_since(t0);
  std::ostringstream os;
  os << "reducts " << print_loops(loop_multiset(via_r), g) << " and "
     << print_loops(loop_multiset(via_b), g) << ", decide_equal " << (eq ? "true" : "false")
     << ", " << fmt_ms(ms);
  return {distinct && eq && ms < 10.0, os.str()};
}

Outcome ac4() {
  const auto gf = fixtures::graph("two_color_wide.graph");
  const auto& g = gf.graph;
  const VertexId R = *g.find_vertex("R"), B = *g.find_vertex("B");
  const auto t0 = Clock::now();
  std::vector<VertexId> colors(5, R);
  colors.insert(colors.end(), 5, B);
  std::set<LoopMultiset> terminal, seen;
  std::function<void(const ClosedDiagram&)> explore = [&](const ClosedDiagram& c) {
    const auto loops = loop_multiset(c);
    if (!seen.insert(loops).second) return;
    bool reducible = false;
    for (VertexId v : {R, B}) {
      if (auto next = reduce_winding_one(c, g, v)) {
        reducible = true;
        explore(*next);
      }
    }
    if (!reducible) terminal.insert(loops);
  };
  explore(close(identity_diagram(colors)));
  const std::vector<LoopMultiset> listed{
      {{{R, 1}, 1}}, {{{B, 1}, 1}}, {{{R, 1}, 2}, {{B, 1}, 2}}};
  const bool all_reached = std::all_of(listed.begin(), listed.end(),
                                       [&](const LoopMultiset& m) { return terminal.count(m); });
  const Presentation p(g, 1);
  bool pairwise = true, bfs = true;
  for (std::size_t i = 0; i < listed.size(); ++i) {
    for (std::size_t j = i + 1; j < listed.size(); ++j) {
      pairwise = pairwise && decide_equal(listed[i], listed[j], g);
      bfs = bfs && bfs_equal(p.to_vector(listed[i]), p.to_vector(listed[j]), p, 12).equal;
    }
  }
  const double ms = ms_since(t0);
  std::ostringstream os;
  os << "irreducible reducts:";
  for (const auto& m : terminal) os << " {" << print_loops(m, g) << "}";
  os << ", decide_equal pairwise " << (pairwise ? "yes" : "no") << ", bfs cap 12 "
     << (bfs ? "yes" : "no") << ", " << fmt_ms(ms);
  return {all_reached && terminal.size() == listed.size() && pairwise && bfs && ms < 1000.0,
          os.str()};
}

struct FuzzGraph {
  std::string name;
  ShiftGraph graph;
  BaseTuple base;
};

std::vector<FuzzGraph> fuzz_graphs(std::size_t random_count, std::uint64_t seed) {
  std::vector<FuzzGraph> out;
  const auto three_color = fixtures::graph("three_color.graph");
  out.push_back({"three_color", three_color.graph, three_color.base});
  std::mt19937_64 rng(seed);
  tk::GeneratorConfig cfg;
  for (std::size_t i = 0; i < random_count; ++i) {
    auto rg = tk::random_graph(rng, cfg);
    out.push_back({"random" + std::to_string(i + 1), rg.graph, rg.base});
  }
  return out;
}

struct BudgetTally {
  std::size_t ok = 0, wrong = 0, limit = 0, witnesses = 0;
};

Outcome ac5() {
  const auto graphs = fuzz_graphs(3, 505);
  const std::vector<std::size_t> per_graph{500, 100, 100, 100};
  tk::GeneratorConfig cfg;
  cfg.max_depth = 5;
  BudgetTally at2, at4, unlimited;
  std::vector<double> times;
  std::size_t max_needed = 0;
  std::mt19937_64 rng(5);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& [name, g, y] = graphs[gi];
    for (std::size_t i = 0; i < per_graph[gi]; ++i) {
      const auto f = from_forest_pair(g, tk::random_element(g, y, rng, cfg));
      const auto h = from_forest_pair(g, tk::random_element(g, y, rng, cfg));
      const auto x = reduce(conjugate_by(h, f));
      auto run = [&](std::optional<std::size_t> budget, BudgetTally& tally, bool witness) {
        ConjugacyOptions opt;
        opt.budget = budget;
        opt.witness = witness;
        try {
          const auto v = is_conjugate(f, x, g, opt);
          (v.conjugate ? tally.ok : tally.wrong) += 1;
          if (v.witness && equal(conjugate_by(*v.witness, x), f)) ++tally.witnesses;
          max_needed = std::max({max_needed, v.semi_f.max_unlock_expansions,
                                 v.semi_g.max_unlock_expansions});
        } catch (const LimitExceeded&) {
          ++tally.limit;
        }
      };
      const auto t0 = Clock::now();
      run(ConjugacyOptions{}.budget, at2, false);
      times.push_back(ms_since(t0));
      run(4, at4, false);
      run(std::nullopt, unlimited, true);
    }
  }
  std::sort(times.begin(), times.end());
  const double median = times[times.size() / 2];
  std::ostringstream os;
  os << times.size() << " instances; B=2: " << at2.ok << " conjugate, " << at2.wrong
     << " refuted, " << at2.limit << " budget exceeded; B=4: " << at4.ok << "/" << at4.wrong
     << "/" << at4.limit << "; unlimited: " << unlimited.ok << "/" << unlimited.wrong << "/"
     << unlimited.limit << " with " << unlimited.witnesses
     << " verified witnesses; most expansions needed by one unlock " << max_needed
     << "; median " << fmt_ms(median) << " at B=2";
  return {at2.wrong == 0 && at2.limit == 0 && median < 2000.0, os.str()};
}

Outcome ac6() {
  const auto graphs = fuzz_graphs(3, 606);
  tk::GeneratorConfig cfg;
  cfg.max_depth = 5;
  std::mt19937_64 rng(6);
  std::size_t tested = 0, trivial = 0, false_pos = 0, limits = 0;
  for (const auto& [name, g, y] : graphs) {
    const auto id = identity_diagram(y.roots);
    for (int i = 0; i < 150; ++i) {
      const auto f = reduce(from_forest_pair(g, tk::random_element(g, y, rng, cfg)));
      if (tk::semantic_equal(g, y, f, id)) {
        ++trivial;
        continue;
      }
      ++tested;
      ConjugacyOptions opt;
      opt.budget = std::nullopt;
      try {
        if (is_conjugate(id, f, g, opt).conjugate) ++false_pos;
      } catch (const LimitExceeded&) {
        ++limits;
      }
    }
  }
  std::ostringstream os;
  os << tested << " nontrivial elements, " << trivial << " trivial skipped, " << false_pos
     << " false positives, " << limits << " unanswered";
  return {tested > 0 && false_pos == 0 && limits == 0, os.str()};
}

Outcome ac7() {
  std::vector<FuzzGraph> graphs;
  for (const char* name : {"three_color.graph", "two_color.graph", "two_color_wide.graph"}) {
    const auto gf = fixtures::graph(name);
    graphs.push_back({name, gf.graph, gf.base});
  }
  tk::GeneratorConfig cfg;
  cfg.max_expansions = 3;
  cfg.max_depth = 4;
  std::mt19937_64 rng(7);
  std::size_t diagrams = 0, mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& [name, g, y] = graphs[i % graphs.size()];
    const auto d = compose(from_forest_pair(g, tk::random_element(g, y, rng, cfg)),
                           from_forest_pair(g, tk::random_element(g, y, rng, cfg)));
    const auto reference = canonical_form(reduce(d));
    ++diagrams;
    for (int k = 0; k < 10; ++k) {
      if (canonical_form(reduce_random(d, rng)) != reference) ++mismatches;
    }
  }
  std::size_t pairs = 0, unstable = 0, positives = 0;
  for (int i = 0; i < 120; ++i) {
    const auto& [name, g, y] = graphs[i % graphs.size()];
    const auto f = from_forest_pair(g, tk::random_element(g, y, rng, cfg));
    const auto h = from_forest_pair(g, tk::random_element(g, y, rng, cfg));
    const auto x = i % 2 == 0 ? reduce(conjugate_by(h, f)) : h;
    std::optional<std::pair<bool, std::optional<int>>> first;
    bool stable = true;
    for (std::uint64_t s = 0; s < 5; ++s) {
      std::mt19937_64 order(1000 * i + s);
      ConjugacyOptions opt;
      opt.budget = std::nullopt;
      opt.rng = &order;
      const auto v = is_conjugate(f, x, g, opt);
      const std::pair<bool, std::optional<int>> key{v.conjugate, v.step_failed};
      if (!first) first = key;
      stable = stable && *first == key;
    }
    ++pairs;
    if (first->first) ++positives;
    if (!stable) ++unstable;
  }
  std::ostringstream os;
  os << diagrams << " diagrams x 10 orders, " << mismatches << " normal form mismatches; "
     << pairs << " closed pairs x 5 orders (" << positives << " conjugate), " << unstable
     << " unstable verdicts";
  return {mismatches == 0 && unstable == 0, os.str()};
}

Outcome ac8() {
  std::vector<FuzzGraph> graphs;
  for (const char* name : {"three_color.graph", "two_color.graph"}) {
    const auto gf = fixtures::graph(name);
    graphs.push_back({name, gf.graph, gf.base});
  }
  tk::GeneratorConfig cfg;
  cfg.max_expansions = 3;
  cfg.max_depth = 3;
  std::mt19937_64 rng(8);
  std::vector<std::vector<ClosedDiagram>> pools(graphs.size());
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& [name, g, y] = graphs[gi];
    for (int i = 0; i < 400 && pools[gi].size() < 60; ++i) {
      const auto f = reduce(from_forest_pair(g, tk::random_element(g, y, rng, cfg)));
      SemiReduceOptions opt;
      auto part = decompose_parts(semi_reduce(close(f), opt).diagram).split_merge;
      if (part.base_line.empty() || non_base_point_count(part) > 6) continue;
      pools[gi].push_back(std::move(part));
    }
  }
  std::size_t instances = 0, agree_pos = 0, agree_neg = 0, disagree = 0;
  for (std::size_t gi = 0; gi < pools.size(); ++gi) {
    const auto& pool = pools[gi];
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::uniform_int_distribution<std::size_t> shifts(1, 3), pick(0, pool.size() - 1);
      const ClosedDiagram& a = pool[i];
      const std::vector<ClosedDiagram> partners{tk::random_similar(a, shifts(rng), rng),
                                                pool[pick(rng)], pool[pick(rng)]};
      for (const auto& b : partners) {
        const bool algebraic = compare_split_merge(skeleton(a), skeleton(b)).has_value();
        const bool brute = tk::brute_similar(a, b, 6);
        ++instances;
        if (algebraic != brute) {
          ++disagree;
        } else {
          (brute ? agree_pos : agree_neg) += 1;
        }
      }
    }
  }
  std::ostringstream os;
  os << instances << " instances, " << agree_pos << " similar and " << agree_neg
     << " not similar in agreement, " << disagree << " disagreements";
  return {instances >= 200 && disagree == 0, os.str()};
}

Outcome ac9() {
  std::size_t pairs = 0, equal_pairs = 0, mismatches = 0;
  std::mt19937_64 rng(9);
  for (const char* name : {"three_color.graph", "two_color.graph", "two_color_wide.graph"}) {
    const auto gf = fixtures::graph(name);
    const auto& g = gf.graph;
    for (std::size_t n = 1; n <= 2; ++n) {
      const Presentation small(g, n), big(g, n + 2);
      std::uniform_int_distribution<int> color(0, static_cast<int>(g.vertex_count()) - 1);
      std::uniform_int_distribution<std::size_t> winding(1, n), degree(1, 4);
      auto random_loops = [&] {
        LoopMultiset m;
        for (std::size_t k = degree(rng); k > 0; --k) ++m[{color(rng), winding(rng)}];
        return m;
      };
      for (int i = 0; i < 40; ++i) {
        const auto a = random_loops();
        LoopMultiset b;
        if (i % 2 == 0) {
          b = random_loops();
        } else {
          // Walk a few relation steps away from a.
          auto v = small.to_vector(a);
          std::uniform_int_distribution<std::size_t> rel(0, small.relations().size() - 1);
          for (int step = 0; step < 4 && !small.relations().empty(); ++step) {
            const auto& r = small.relations()[rel(rng)];
            const bool forward = rng() % 2 == 0;
            const auto& from = forward ? r.lhs : r.rhs;
            const auto& to = forward ? r.rhs : r.lhs;
            bool fits = true;
            for (std::size_t j = 0; j < v.size(); ++j) fits = fits && v[j] >= from[j];
            if (!fits) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - from[j] + to[j];
          }
          b = small.to_multiset(v);
        }
        const bool v_small = decide_equal(small.to_vector(a), small.to_vector(b), small);
        const bool v_big = decide_equal(big.to_vector(a), big.to_vector(b), big);
        ++pairs;
        if (v_small) ++equal_pairs;
        if (v_small != v_big) ++mismatches;
      }
    }
  }
  std::ostringstream os;
  os << pairs << " pairs (" << equal_pairs << " equal), " << mismatches
     << " verdict changes between N and N+2";
  return {mismatches == 0 && equal_pairs > 0 && equal_pairs < pairs, os.str()};
}

Outcome ac10() {
  std::ostringstream os;
  bool pass = true;
  std::mt19937_64 rng(10);
  for (const char* name : {"three_color.graph", "two_color.graph", "two_color_wide.graph"}) {
    const auto gf = fixtures::graph(name);
    const auto& g = gf.graph;
    const auto& y = gf.base;
    tk::GeneratorConfig cfg;
    cfg.max_expansions = 2;
    cfg.max_depth = 3;
    std::size_t agree = 0, disagree = 0, same = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto fp = tk::random_element(g, y, rng, cfg);
      ForestPair other;
      if (i % 3 == 0) {
        // Same element, different forest pair.
        std::uniform_int_distribution<std::size_t> leaf(0, fp.domain.size() - 1);
        other = expand_regular(g, fp, leaf(rng));
      } else {
        other = tk::random_element(g, y, rng, cfg);
      }
      const auto f = from_forest_pair(g, fp);
      const auto h = from_forest_pair(g, other);
      const bool algebraic = equal(f, h);
      const bool semantic = tk::semantic_equal(g, y, f, h);
      if (algebraic == semantic) {
        ++agree;
        if (semantic) ++same;
      } else {
        ++disagree;
      }
    }
    pass = pass && disagree == 0;
    os << name << ": " << agree << "/" << (agree + disagree) << " agree (" << same
       << " equal); ";
  }
  return {pass, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"AC1 square of sigma reduces to the drawn diagram", ac1},
      {"AC2 type 3 reduction keeps winding", ac2},
      {"AC3 two distinct type 3 reducts, two-color graph", ac3},
      {"AC4 three irreducible loop parts, wide two-color graph", ac4},
      {"AC5 conjugation soundness fuzz", ac5},
      {"AC6 identity negative control", ac6},
      {"AC7 normal form independent of reduction order", ac7},
      {"AC8 split-merge comparison vs brute similarity", ac8},
      {"AC9 semigroup verdicts stable under larger N", ac9},
      {"AC10 equality vs semantic evaluation", ac10},
  };
  int failed = 0;
  for (const auto& [label, fn] : criteria) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = ms_since(t0) / 1000.0;
    if (!out.pass) ++failed;
    char buf[32];
    std::snprintf(buf, sizeof buf, " [%.1fs]", secs);
    std::cout << (out.pass ? "PASS " : "FAIL ") << label << ": " << out.detail << buf << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
