#include "shiftconj/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "shiftconj/conjugacy.hpp"
#include "shiftconj/errors.hpp"
#include "shiftconj/io.hpp"

namespace shiftconj {

namespace {

using nlohmann::json;

struct Options {
  std::string graph, lhs, rhs, elem, dot;
  bool json = false;
  std::optional<std::uint64_t> seed;
  long long exponent = 2;
  std::size_t budget = 2;
  std::size_t semigroup_cap = 12;
  bool witness = false;
  bool explain = false;
  bool fix = false;
  bool closed = false;
  bool semi = false;
};

struct Report {
  json data = json::object();
  std::ostringstream text;
};

GraphFile load_graph(const Options& o, bool require_valid = true) {
  auto gf = parse_graph(read_file(o.graph));
  if (require_valid) {
    const auto problems = validate_graph(gf.graph);
    if (!problems.empty()) {
      throw InvalidInput("graph violates the standing assumptions (" + problems.front().message +
                         "); run normalize first");
    }
  }
  return gf;
}

StrandDiagram load_element(const std::string& path, const GraphFile& gf) {
  return from_forest_pair(gf.graph, parse_element(read_file(path), gf.graph, gf.base));
}

std::string element_text(const StrandDiagram& d, const GraphFile& gf) {
  return print_element(gf.graph, to_forest_pair(reduce(d), gf.graph, gf.base));
}

void write_dot(const Options& o, const std::string& dot) {
  if (o.dot.empty()) return;
  std::ofstream file(o.dot);
  if (!file) throw InvalidInput("cannot write " + o.dot);
  file << dot;
}

json loops_json(const LoopMultiset& loops, const ShiftGraph& g) {
  json arr = json::array();
  for (const auto& [key, count] : loops) {
    arr.push_back({{"color", g.vertex_name(key.first)}, {"winding", key.second}, {"count", count}});
  }
  return arr;
}

json sizes_json(const ClosedDiagram& c) {
  const std::size_t total = c.graph.live_point_count();
  return {{"points", total},
          {"base_points", c.base_line.size()},
          {"split_merge_points", non_base_point_count(c)}};
}

json trace_json(const ConjugationTrace& t) {
  json arr = json::array();
  for (const auto& m : t.moves) arr.push_back(to_string(m.kind));
  return arr;
}

std::string trace_summary(const ConjugationTrace& t) {
  std::map<std::string, std::size_t> counts;
  for (const auto& m : t.moves) ++counts[to_string(m.kind)];
  std::string out;
  for (const auto& [k, n] : counts) out += (out.empty() ? "" : ", ") + k + " x" + std::to_string(n);
  return out.empty() ? "none" : out;
}

void cmd_check_graph(const Options& o, Report& r) {
  const auto gf = load_graph(o, false);
  const auto problems = validate_graph(gf.graph);
  json list = json::array();
  for (const auto& p : problems) {
    list.push_back({{"kind", p.kind == GraphViolation::Kind::DeadEnd ? "dead-end" : "redundant-edge"},
                    {"vertex", gf.graph.vertex_name(p.vertex)},
                    {"message", p.message}});
    r.text << "violation: " << p.message << '\n';
  }
  r.data["valid"] = problems.empty();
  r.data["violations"] = list;
  if (problems.empty()) r.text << "graph satisfies the standing assumptions\n";
  if (o.fix) {
    const auto norm = normalize_graph(gf.graph, gf.base);
    r.data["normalized"] = print_graph(norm.graph, norm.base);
    r.text << "normalized:\n" << print_graph(norm.graph, norm.base);
  }
}

void cmd_normalize(const Options& o, Report& r) {
  const auto gf = load_graph(o, false);
  const auto norm = normalize_graph(gf.graph, gf.base);
  json rename = json::object();
  for (std::size_t v = 0; v < norm.rename.size(); ++v) {
    const auto& name = gf.graph.vertex_name(static_cast<VertexId>(v));
    rename[name] = norm.rename[v] ? json(norm.graph.vertex_name(*norm.rename[v])) : json(nullptr);
  }
  r.data["graph"] = print_graph(norm.graph, norm.base);
  r.data["rename"] = rename;
  r.text << print_graph(norm.graph, norm.base);
}

void cmd_reduce(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  const auto d = load_element(o.elem, gf);
  ReductionLog log;
  const auto red = reduce(d, &log);
  r.data["element"] = element_text(red, gf);
  r.data["reductions"] = {{"type0", log.type0}, {"type1", log.type1}, {"type2", log.type2}};
  r.text << element_text(red, gf) << "reductions: type 0 x" << log.type0 << ", type 1 x"
         << log.type1 << ", type 2 x" << log.type2 << '\n';
  write_dot(o, to_dot(red, gf.graph));
}

void cmd_eq(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  const bool same = equal(load_element(o.lhs, gf), load_element(o.rhs, gf));
  r.data["equal"] = same;
  r.text << (same ? "equal" : "not equal") << '\n';
}

void emit_element(const Options& o, Report& r, const StrandDiagram& d, const GraphFile& gf) {
  const auto red = reduce(d);
  r.data["element"] = element_text(red, gf);
  r.text << element_text(red, gf);
  write_dot(o, to_dot(red, gf.graph));
}

void cmd_compose(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  emit_element(o, r, compose(load_element(o.lhs, gf), load_element(o.rhs, gf)), gf);
}

void cmd_invert(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  emit_element(o, r, invert(load_element(o.elem, gf)), gf);
}

void cmd_power(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  emit_element(o, r, power(load_element(o.elem, gf), o.exponent), gf);
}

void cmd_conj(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  const auto f = load_element(o.lhs, gf);
  const auto g = load_element(o.rhs, gf);
  std::mt19937_64 rng(o.seed.value_or(0));
  ConjugacyOptions opts;
  opts.budget = o.budget == 0 ? std::nullopt : std::optional<std::size_t>(o.budget);
  opts.semigroup_cap = o.semigroup_cap;
  opts.witness = o.witness;
  opts.rng = o.seed ? &rng : nullptr;
  const auto v = is_conjugate(f, g, gf.graph, opts);

  r.data["verdict"] = v.conjugate ? "conjugate" : "not-conjugate";
  r.data["step_failed"] = v.step_failed ? json(*v.step_failed) : json(nullptr);
  r.data["reason"] = v.reason;
  const bool ran = !v.step_failed || *v.step_failed != 0;
  if (ran) {
    r.data["semi_reduced_sizes"] = {{"lhs", sizes_json(v.semi_f.diagram)},
                                    {"rhs", sizes_json(v.semi_g.diagram)}};
    r.data["loop_multisets"] = {{"lhs", loops_json(v.loops_f, gf.graph)},
                                {"rhs", loops_json(v.loops_g, gf.graph)}};
    r.data["steps"] = {{"lhs", trace_json(v.semi_f.trace)}, {"rhs", trace_json(v.semi_g.trace)}};
  } else {
    r.data["semi_reduced_sizes"] = nullptr;
    r.data["loop_multisets"] = nullptr;
    r.data["steps"] = nullptr;
  }
  r.data["witness_available"] = v.witness.has_value();
  r.data["witness"] = v.witness ? json(element_text(*v.witness, gf)) : json(nullptr);

  r.text << (v.conjugate ? "conjugate" : "not conjugate");
  if (v.step_failed) r.text << " (step " << *v.step_failed << ": " << v.reason << ")";
  r.text << '\n';
  if (ran) {
    r.text << "step 1 lhs: " << trace_summary(v.semi_f.trace) << '\n';
    r.text << "step 1 rhs: " << trace_summary(v.semi_g.trace) << '\n';
    r.text << "split-merge points: " << non_base_point_count(v.semi_f.diagram) << " / "
           << non_base_point_count(v.semi_g.diagram) << '\n';
    r.text << "loops lhs: " << print_loops(v.loops_f, gf.graph) << '\n';
    r.text << "loops rhs: " << print_loops(v.loops_g, gf.graph) << '\n';
  }
  if (o.witness) {
    if (v.witness) {
      r.text << "witness:\n" << element_text(*v.witness, gf);
    } else {
      r.text << "witness: unavailable\n";
    }
  }
  if (ran) write_dot(o, to_dot(v.semi_f.diagram, gf.graph));
}

void cmd_semigroup_eq(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  const auto a = parse_loops(o.lhs, gf.graph);
  const auto b = parse_loops(o.rhs, gf.graph);
  const Presentation p(gf.graph, std::max(max_winding(a), max_winding(b)));
  const auto va = p.to_vector(a);
  const auto vb = p.to_vector(b);
  const CompletedSystem system(p);
  const bool same = system.normal_form(va) == system.normal_form(vb);
  r.data["equal"] = same;
  r.data["max_winding"] = p.max_winding();
  r.text << (same ? "equal" : "not equal") << " in the loops semigroup at N = " << p.max_winding()
         << '\n';
  if (o.explain) {
    json rel = json::array();
    std::istringstream lines(p.dump());
    for (std::string line; std::getline(lines, line);) rel.push_back(line);
    r.data["presentation"] = rel;
    r.data["rules"] = system.rules().size();
    r.data["normal_forms"] = {{"lhs", p.format(system.normal_form(va))},
                              {"rhs", p.format(system.normal_form(vb))}};
    r.text << "presentation:\n" << p.dump();
    r.text << "completed rules: " << system.rules().size() << '\n';
    r.text << "normal form lhs: " << p.format(system.normal_form(va)) << '\n';
    r.text << "normal form rhs: " << p.format(system.normal_form(vb)) << '\n';
    const auto cap = std::max({o.semigroup_cap, total_degree(va), total_degree(vb)});
    const auto bfs = bfs_equal(va, vb, p, cap);
    json path = json::array();
    for (const auto& s : bfs.path) path.push_back(p.format(s));
    r.data["bfs"] = {{"cap", cap}, {"equal", bfs.equal}, {"explored", bfs.explored}, {"path", path}};
    r.text << "search within degree " << cap << ": "
           << (bfs.equal ? "connected" : "not connected") << " after " << bfs.explored
           << " states\n";
    for (const auto& s : bfs.path) r.text << "  " << p.format(s) << '\n';
  }
}

void cmd_export_dot(const Options& o, Report& r) {
  const auto gf = load_graph(o);
  auto d = load_element(o.elem, gf);
  std::string dot;
  if (o.closed || o.semi) {
    auto c = close(reduce(d));
    if (o.semi) {
      SemiReduceOptions so;
      so.budget = o.budget == 0 ? std::nullopt : std::optional<std::size_t>(o.budget);
      c = semi_reduce(c, so).diagram;
    }
    dot = to_dot(c, gf.graph);
  } else {
    dot = to_dot(d, gf.graph);
  }
  if (o.dot.empty()) {
    r.text << dot;
  } else {
    write_dot(o, dot);
    r.text << "wrote " << o.dot << '\n';
  }
  r.data["dot"] = dot;
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strand diagram tools for edge shift groups: normal forms, equality and conjugacy"};
  app.name("shiftconj");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report on stdout");
  app.add_option("--dot", o.dot, "Write a DOT drawing of the resulting diagram");
  app.add_option("--seed", o.seed, "Seed for randomized choices");
  app.add_option("--budget", o.budget, "Expanding shifts allowed per unlocked reduction (0: unlimited)");
  app.add_option("--semigroup-cap", o.semigroup_cap, "Degree cap of the loop search used for witnesses");

  std::string command;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&command, name] { command = name; });
    s->add_option("--graph", o.graph, "Graph file")->required();
    return s;
  };
  auto* check = sub("check-graph", "Report violations of the standing assumptions");
  check->add_flag("--fix", o.fix, "Also print the normalized graph");
  sub("normalize", "Remove dead ends and contract redundant edges");
  sub("reduce", "Reduce an element")->add_option("--elem", o.elem, "Element file")->required();
  for (const char* name : {"eq", "compose", "conj"}) {
    auto* s = sub(name, name == std::string("eq")        ? "Decide equality of two elements"
                        : name == std::string("compose") ? "Compose two elements, lhs first"
                                                         : "Decide conjugacy of two elements");
    s->add_option("--lhs", o.lhs, "Element file")->required();
    s->add_option("--rhs", o.rhs, "Element file")->required();
    if (name == std::string("conj")) s->add_flag("--witness", o.witness, "Assemble a conjugator");
  }
  sub("invert", "Invert an element")->add_option("--elem", o.elem, "Element file")->required();
  auto* pw = sub("power", "Power of an element");
  pw->add_option("--elem", o.elem, "Element file")->required();
  pw->add_option("-n,--exponent", o.exponent, "Exponent (default 2)");
  auto* sg = sub("semigroup-eq", "Decide equality of loop sums such as \"L(R,1)+2*L(B,1)\"");
  sg->add_option("--lhs", o.lhs, "Loop sum")->required();
  sg->add_option("--rhs", o.rhs, "Loop sum")->required();
  sg->add_flag("--explain", o.explain, "Print the presentation, normal forms and a relation path");
  auto* ex = sub("export-dot", "Draw an element or its closed diagram");
  ex->add_option("--elem", o.elem, "Element file")->required();
  ex->add_flag("--closed", o.closed, "Draw the closed diagram");
  ex->add_flag("--semi", o.semi, "Draw the semi-reduced closed diagram");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  Report r;
  r.data["schema_version"] = kJsonSchemaVersion;
  r.data["command"] = command;
  int code = 0;
  try {
    if (command == "check-graph") cmd_check_graph(o, r);
    else if (command == "normalize") cmd_normalize(o, r);
    else if (command == "reduce") cmd_reduce(o, r);
    else if (command == "eq") cmd_eq(o, r);
    else if (command == "compose") cmd_compose(o, r);
    else if (command == "invert") cmd_invert(o, r);
    else if (command == "power") cmd_power(o, r);
    else if (command == "conj") cmd_conj(o, r);
    else if (command == "semigroup-eq") cmd_semigroup_eq(o, r);
    else if (command == "export-dot") cmd_export_dot(o, r);
  } catch (const ParseError& e) {
    code = 1;
    r.data["error"] = error_json("parse-error", e.what());
    r.data["error"]["line"] = e.line();
    r.data["error"]["column"] = e.column();
  } catch (const InvalidInput& e) {
    code = 1;
    r.data["error"] = error_json("invalid-input", e.what());
  } catch (const LimitExceeded& e) {
    code = 2;
    r.data["error"] = error_json("limit", e.what());
    r.data["error"]["limit"] = e.limit();
  }
  if (o.json) {
    out << r.data.dump(2) << '\n';
  } else if (code == 0) {
    out << r.text.str();
  } else {
    err << "error";
    if (r.data["error"].contains("limit")) err << " (limit: " << r.data["error"]["limit"].get<std::string>() << ")";
    err << ": " << r.data["error"]["message"].get<std::string>() << '\n';
  }
  return code;
}

}  // namespace shiftconj
