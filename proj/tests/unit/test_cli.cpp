#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "shiftconj/cli.hpp"
#include "shiftconj/conjugacy.hpp"
#include "shiftconj/errors.hpp"
#include "shiftconj/testkit.hpp"
#include "support.hpp"

using namespace shiftconj;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "shiftconj_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << text;
  return path;
}

const std::string three_color = fixtures::path("three_color.graph");
const std::string sigma = fixtures::path("sigma.elem");

}  // namespace

TEST_CASE("help and usage errors") {
  const auto help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("shiftconj") != std::string::npos);
  CHECK(help.out.find("conj") != std::string::npos);
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"reduce", "--graph", three_color}).code == 1);
}

TEST_CASE("reduce and power print elements") {
  const auto sq = call({"power", "--graph", three_color, "--elem", sigma, "-n", "2"});
  REQUIRE(sq.code == 0);
  const auto gf = fixtures::graph("three_color.graph");
  const auto printed = parse_element(sq.out, gf.graph, gf.base);
  CHECK(equal(from_forest_pair(gf.graph, printed),
              from_forest_pair(gf.graph, fixtures::element("sigma_squared.elem", gf))));

  const auto red = call({"--json", "reduce", "--graph", three_color, "--elem", sigma});
  REQUIRE(red.code == 0);
  const auto j = json::parse(red.out);
  CHECK(j["schema_version"] == kJsonSchemaVersion);
  CHECK(j["command"] == "reduce");
  CHECK(j.contains("element"));
  CHECK(j["reductions"].contains("type2"));
}

TEST_CASE("equality and composition") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto inv = call({"invert", "--graph", three_color, "--elem", sigma});
  REQUIRE(inv.code == 0);
  const auto inv_path = scratch("sigma_inv.elem", inv.out);
  const auto prod = call({"compose", "--graph", three_color, "--lhs", sigma, "--rhs", inv_path});
  REQUIRE(prod.code == 0);
  const auto id_path = scratch("identity.elem", prod.out);
  const auto id = parse_element(prod.out, gf.graph, gf.base);
  CHECK(id == identity_forest_pair(gf.base));

  const auto eq = call({"--json", "eq", "--graph", three_color, "--lhs", id_path, "--rhs", sigma});
  REQUIRE(eq.code == 0);
  CHECK(json::parse(eq.out)["equal"] == false);
  const auto same = call({"--json", "eq", "--graph", three_color, "--lhs", sigma, "--rhs", sigma});
  CHECK(json::parse(same.out)["equal"] == true);
}

TEST_CASE("conjugacy report") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  const auto s = from_forest_pair(g, fixtures::element("sigma.elem", gf));
  std::mt19937_64 rng(91);
  testkit::GeneratorConfig cfg;
  const auto h = from_forest_pair(g, testkit::random_element(g, gf.base, rng, cfg));
  const auto x = reduce(conjugate_by(h, s));
  const auto x_path = scratch("sigma_conj.elem", print_element(g, to_forest_pair(x, g, gf.base)));

  const auto r = call({"--json", "conj", "--graph", three_color, "--lhs", sigma, "--rhs", x_path, "--witness"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["command"] == "conj");
  CHECK(j["verdict"] == "conjugate");
  CHECK(j["step_failed"].is_null());
  for (const char* key : {"reason", "semi_reduced_sizes", "loop_multisets", "steps",
                          "witness_available", "witness"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["semi_reduced_sizes"]["lhs"]["split_merge_points"] == 0);
  CHECK(j["loop_multisets"]["lhs"].size() == 2);
  REQUIRE(j["witness_available"] == true);
  const auto w = from_forest_pair(g, parse_element(j["witness"].get<std::string>(), g, gf.base));
  CHECK(equal(conjugate_by(w, x), s));

  const auto sq_path = fixtures::path("sigma_squared.elem");
  const auto no = call({"--json", "conj", "--graph", three_color, "--lhs", sigma, "--rhs", sq_path});
  REQUIRE(no.code == 0);
  const auto k = json::parse(no.out);
  CHECK(k["verdict"] == "not-conjugate");
  CHECK(k["step_failed"] == 3);

  const auto text = call({"conj", "--graph", three_color, "--lhs", sigma, "--rhs", x_path});
  CHECK(text.code == 0);
  CHECK(text.out.find("conjugate") != std::string::npos);
}

TEST_CASE("budget exhaustion exits with code 2") {
  const auto gf = fixtures::graph("three_color.graph");
  const auto& g = gf.graph;
  std::mt19937_64 rng(92);
  testkit::GeneratorConfig cfg;
  cfg.max_expansions = 6;
  // Find an element whose semi-reduction needs more than one expanding shift.
  std::optional<StrandDiagram> hard;
  for (int i = 0; i < 300 && !hard; ++i) {
    const auto f = reduce(from_forest_pair(g, testkit::random_element(g, gf.base, rng, cfg)));
    if (semi_reduce(close(f), {std::nullopt, nullptr}).max_unlock_expansions >= 2) hard = f;
  }
  REQUIRE(hard.has_value());
  const auto path = scratch("hard.elem", print_element(g, to_forest_pair(*hard, g, gf.base)));
  const auto r = call({"--json", "--budget", "1", "conj", "--graph", three_color, "--lhs", path, "--rhs", path});
  CHECK(r.code == 2);
  const auto j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "limit");
  CHECK(j["error"]["limit"] == "similarity budget");
  const auto text = call({"--budget", "1", "conj", "--graph", three_color, "--lhs", path, "--rhs", path});
  CHECK(text.code == 2);
  CHECK(text.err.find("similarity budget") != std::string::npos);
  // Budget 0 lifts the limit.
  CHECK(call({"--budget", "0", "conj", "--graph", three_color, "--lhs", path, "--rhs", path}).code == 0);
}

TEST_CASE("input errors exit with code 1") {
  const auto bad = scratch("bad.graph", "graph\n  vertex A\n  edge 0: A -> B\n");
  const auto r = call({"--json", "check-graph", "--graph", bad});
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["error"]["kind"] == "parse-error");
  CHECK(j["error"]["line"] == 3);
  CHECK(j["error"].contains("column"));

  const auto missing = call({"--json", "reduce", "--graph", three_color, "--elem", "/nonexistent.elem"});
  CHECK(missing.code == 1);
  CHECK(json::parse(missing.out)["error"]["kind"] == "invalid-input");

  const auto dead = fixtures::path("dead_end.graph");
  const auto refused = call({"reduce", "--graph", dead, "--elem", sigma});
  CHECK(refused.code == 1);
  CHECK_FALSE(refused.err.empty());
}

TEST_CASE("graph checks and normalization") {
  const auto dead = fixtures::path("dead_end.graph");
  const auto check = call({"--json", "check-graph", "--graph", dead, "--fix"});
  REQUIRE(check.code == 0);
  const auto j = json::parse(check.out);
  CHECK(j["valid"] == false);
  CHECK_FALSE(j["violations"].empty());
  const auto normalized = parse_graph(j["normalized"].get<std::string>());
  CHECK(validate_graph(normalized.graph).empty());
  CHECK(normalized.graph.vertex_count() == 1);

  const auto norm = call({"normalize", "--graph", dead});
  REQUIRE(norm.code == 0);
  CHECK(parse_graph(norm.out).graph == normalized.graph);
  const auto ok = call({"--json", "check-graph", "--graph", three_color});
  CHECK(json::parse(ok.out)["valid"] == true);
}

TEST_CASE("semigroup equality") {
  const auto right = fixtures::path("two_color_wide.graph");
  const auto r = call({"--json", "semigroup-eq", "--graph", right, "--lhs", "5*L(R,1)+5*L(B,1)",
                       "--rhs", "L(B,1)", "--explain"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["equal"] == true);
  CHECK(j["max_winding"] == 1);
  CHECK(j.contains("presentation"));
  CHECK(j.contains("bfs"));
  const auto no = call({"--json", "semigroup-eq", "--graph", three_color, "--lhs", "L(R,1)", "--rhs", "L(G,1)"});
  CHECK(json::parse(no.out)["equal"] == false);
  CHECK(call({"semigroup-eq", "--graph", three_color, "--lhs", "L(Q,1)", "--rhs", "L(G,1)"}).code == 1);
}

TEST_CASE("export-dot writes drawings") {
  const auto dot_path = (std::filesystem::temp_directory_path() / "shiftconj_cli_tests" / "s.dot").string();
  std::filesystem::create_directories(std::filesystem::path(dot_path).parent_path());
  const auto r = call({"--dot", dot_path, "export-dot", "--graph", three_color, "--elem", sigma, "--closed"});
  REQUIRE(r.code == 0);
  std::ifstream in(dot_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("digraph", 0) == 0);
  const auto semi = call({"export-dot", "--graph", three_color, "--elem", sigma, "--semi"});
  CHECK(semi.code == 0);
  CHECK(semi.out.find("digraph") != std::string::npos);
}
