#include "shiftconj/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shiftconj/errors.hpp"

namespace shiftconj {

namespace {

struct Token {
  std::string text;  // empty at end of input
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size();) {
      const char ch = text[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++col;
        ++i;
      } else if (ch == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
        Token t{"", line, col};
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
          t.text += text[i++];
          ++col;
        }
        tokens_.push_back(std::move(t));
      } else if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        tokens_.push_back({"->", line, col});
        i += 2;
        col += 2;
      } else if (std::string_view(";:,[].@()+*=").find(ch) != std::string_view::npos) {
        tokens_.push_back({std::string(1, ch), line, col});
        ++i;
        ++col;
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
      }
    }
    end_ = {"", line, col};
  }

  const Token& peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : end_; }
  bool at_end() const { return pos_ >= tokens_.size(); }
  Token next() {
    Token t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  bool accept(std::string_view s) {
    if (!at_end() && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(std::string_view s) {
    if (peek().text != s) fail("expected '" + std::string(s) + "'");
    return next();
  }
  Token identifier(const std::string& what) {
    const auto& t = peek();
    if (t.text.empty() || !(std::isalnum(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_')) {
      fail("expected " + what);
    }
    return next();
  }
  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    throw ParseError(message + (t.text.empty() ? " at end of input" : ", found '" + t.text + "'"),
                     t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  Token end_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail_at(const Token& t, const std::string& message) {
  throw ParseError(message, t.line, t.column);
}

template <class Item>
void bracket_list(Lexer& lx, Item item) {
  lx.expect("[");
  if (lx.accept("]")) return;
  do {
    item();
  } while (lx.accept(","));
  lx.expect("]");
}

std::size_t parse_number(const Token& t) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos ||
      t.text.size() > 9) {
    fail_at(t, "expected a number, found '" + t.text + "'");
  }
  return std::stoul(t.text);
}

std::size_t parse_root(Lexer& lx, const ShiftGraph& g, const BaseTuple& y) {
  const Token name = lx.identifier("a root");
  const auto v = g.find_vertex(name.text);
  if (!v) fail_at(name, "unknown vertex '" + name.text + "'");
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < y.roots.size(); ++i) {
    if (y.roots[i] == *v) slots.push_back(i);
  }
  if (slots.empty()) fail_at(name, "vertex '" + name.text + "' is not in the base");
  if (lx.accept("@")) {
    const Token k = lx.next();
    const auto n = parse_number(k);
    if (n < 1 || n > slots.size()) fail_at(k, "root occurrence out of range");
    return slots[n - 1];
  }
  if (slots.size() > 1) fail_at(name, "root '" + name.text + "' is ambiguous; write " + name.text + "@k");
  return slots[0];
}

PathWord parse_word(Lexer& lx, const ShiftGraph& g, const BaseTuple& y) {
  PathWord w;
  w.root = parse_root(lx, g, y);
  VertexId at = y.roots[w.root];
  while (lx.accept(".")) {
    const Token e = lx.identifier("an edge name");
    const auto id = g.find_edge(e.text);
    if (!id) fail_at(e, "unknown edge '" + e.text + "'");
    if (g.edge(*id).init != at) fail_at(e, "edge '" + e.text + "' does not leave " + g.vertex_name(at));
    w.edges.push_back(*id);
    at = g.edge(*id).term;
  }
  return w;
}

}  // namespace

GraphFile parse_graph(std::string_view text) {
  Lexer lx(text);
  lx.expect("graph");
  GraphFile out;
  auto& g = out.graph;
  std::map<VertexId, Token> ordered;
  std::vector<std::pair<Token, std::vector<Token>>> orders;
  for (;;) {
    lx.accept(";");
    if (lx.accept("vertex")) {
      const Token name = lx.identifier("a vertex name");
      if (g.find_vertex(name.text)) fail_at(name, "duplicate vertex '" + name.text + "'");
      g.add_vertex(name.text);
    } else if (lx.accept("edge")) {
      const Token name = lx.identifier("an edge name");
      if (g.find_edge(name.text)) fail_at(name, "duplicate edge '" + name.text + "'");
      lx.expect(":");
      const Token from = lx.identifier("a vertex name");
      lx.expect("->");
      const Token to = lx.identifier("a vertex name");
      const auto a = g.find_vertex(from.text);
      const auto b = g.find_vertex(to.text);
      if (!a) fail_at(from, "unknown vertex '" + from.text + "'");
      if (!b) fail_at(to, "unknown vertex '" + to.text + "'");
      g.add_edge(name.text, *a, *b);
    } else if (lx.accept("order")) {
      const Token name = lx.identifier("a vertex name");
      lx.expect(":");
      std::vector<Token> edges;
      bracket_list(lx, [&] { edges.push_back(lx.identifier("an edge name")); });
      orders.emplace_back(name, std::move(edges));
    } else {
      break;
    }
  }
  for (auto& [name, edges] : orders) {
    const auto v = g.find_vertex(name.text);
    if (!v) fail_at(name, "unknown vertex '" + name.text + "'");
    if (ordered.count(*v)) fail_at(name, "second order for vertex '" + name.text + "'");
    ordered.emplace(*v, name);
    std::vector<EdgeId> ids;
    for (const auto& e : edges) {
      const auto id = g.find_edge(e.text);
      if (!id) fail_at(e, "unknown edge '" + e.text + "'");
      ids.push_back(*id);
    }
    try {
      g.set_out_order(*v, ids);
    } catch (const InvalidInput& ex) {
      fail_at(name, ex.what());
    }
  }
  lx.expect("base");
  bracket_list(lx, [&] {
    const Token name = lx.identifier("a vertex name");
    const auto v = g.find_vertex(name.text);
    if (!v) fail_at(name, "unknown vertex '" + name.text + "'");
    out.base.roots.push_back(*v);
  });
  if (!lx.at_end()) lx.fail("trailing input");
  if (g.vertex_count() == 0) throw ParseError("graph has no vertices", 1, 1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!ordered.count(static_cast<VertexId>(v))) {
      throw ParseError("missing order line for vertex '" + g.vertex_name(static_cast<VertexId>(v)) + "'",
                       lx.peek().line, lx.peek().column);
    }
  }
  if (out.base.roots.empty()) throw ParseError("empty base", lx.peek().line, lx.peek().column);
  return out;
}

ForestPair parse_element(std::string_view text, const ShiftGraph& g, const BaseTuple& y) {
  Lexer lx(text);
  lx.expect("element");
  ForestPair fp;
  fp.base = y;
  lx.expect("domain");
  bracket_list(lx, [&] { fp.domain.push_back(parse_word(lx, g, y)); });
  lx.expect("range");
  bracket_list(lx, [&] { fp.range.push_back(parse_word(lx, g, y)); });
  if (!lx.at_end()) lx.fail("trailing input");
  const auto problems = validate_forest_pair(g, fp);
  if (!problems.empty()) throw InvalidInput("invalid element: " + problems.front());
  return fp;
}

LoopMultiset parse_loops(std::string_view text, const ShiftGraph& g) {
  Lexer lx(text);
  LoopMultiset out;
  do {
    std::size_t count = 1;
    if (lx.peek().text != "L") {
      count = parse_number(lx.next());
      lx.expect("*");
    }
    lx.expect("L");
    lx.expect("(");
    const Token name = lx.identifier("a vertex name");
    const auto v = g.find_vertex(name.text);
    if (!v) fail_at(name, "unknown vertex '" + name.text + "'");
    lx.expect(",");
    const Token w = lx.next();
    const auto winding = parse_number(w);
    if (winding < 1) fail_at(w, "winding must be positive");
    lx.expect(")");
    if (count > 0) out[{*v, winding}] += count;
  } while (lx.accept("+"));
  if (!lx.at_end()) lx.fail("trailing input");
  if (out.empty()) throw ParseError("empty loop sum", 1, 1);
  return out;
}

std::string print_graph(const ShiftGraph& g, const BaseTuple& y) {
  std::ostringstream os;
  os << "graph\n  ";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << (v ? "; " : "") << "vertex " << g.vertex_name(static_cast<VertexId>(v));
  }
  os << '\n';
  if (g.edge_count() > 0) {
    os << "  ";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edge(static_cast<EdgeId>(e));
      os << (e ? "; " : "") << "edge " << ed.name << ": " << g.vertex_name(ed.init) << " -> "
         << g.vertex_name(ed.term);
    }
    os << '\n';
  }
  os << "  ";
  bool first = true;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto edges = g.out_edges(static_cast<VertexId>(v));
    os << (first ? "" : "; ") << "order " << g.vertex_name(static_cast<VertexId>(v)) << ": [";
    first = false;
    for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? ", " : "") << g.edge(edges[i]).name;
    os << ']';
  }
  os << "\nbase [";
  for (std::size_t i = 0; i < y.roots.size(); ++i) {
    os << (i ? ", " : "") << g.vertex_name(y.roots[i]);
  }
  os << "]\n";
  return os.str();
}

std::string print_word(const ShiftGraph& g, const BaseTuple& y, const PathWord& w) {
  const VertexId v = y.roots.at(w.root);
  std::string out = g.vertex_name(v);
  std::size_t occurrence = 0, total = 0;
  for (std::size_t i = 0; i < y.roots.size(); ++i) {
    if (y.roots[i] != v) continue;
    ++total;
    if (i <= w.root) ++occurrence;
  }
  if (total > 1) out += "@" + std::to_string(occurrence);
  for (EdgeId e : w.edges) out += "." + g.edge(e).name;
  return out;
}

std::string print_element(const ShiftGraph& g, const ForestPair& fp) {
  std::ostringstream os;
  auto list = [&](const std::vector<PathWord>& words) {
    os << '[';
    for (std::size_t i = 0; i < words.size(); ++i) {
      os << (i ? ", " : "") << print_word(g, fp.base, words[i]);
    }
    os << "]\n";
  };
  os << "element\n  domain ";
  list(fp.domain);
  os << "  range  ";
  list(fp.range);
  return os.str();
}

std::string print_loops(const LoopMultiset& loops, const ShiftGraph& g) {
  std::string out;
  for (const auto& [key, count] : loops) {
    if (!count) continue;
    if (!out.empty()) out += '+';
    if (count > 1) out += std::to_string(count) + "*";
    out += "L(" + g.vertex_name(key.first) + "," + std::to_string(key.second) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

const char* palette(VertexId v) {
  static const char* colors[] = {"red",    "blue",  "darkgreen", "orange", "purple",
                                 "brown",  "cyan4", "magenta",   "gold3",  "gray40"};
  return colors[static_cast<std::size_t>(v) % 10];
}

void dot_body(std::ostringstream& os, const DiagramGraph& G, const ShiftGraph& g,
              const std::set<PointId>& terminals) {
  for (PointId p : G.live_points()) {
    const auto& pt = G.point(p);
    os << "  p" << p << " [label=\"" << g.vertex_name(pt.color) << "\", color=" << palette(pt.color);
    if (pt.base) {
      os << ", shape=box";
    } else if (terminals.count(p)) {
      os << ", shape=plaintext";
    } else {
      os << ", shape=circle, width=0.2";
    }
    os << "];\n";
  }
  for (StrandId s : G.live_strands()) {
    const auto& st = G.strand(s);
    const auto& out = G.point(st.origin).out;
    const auto& in = G.point(st.terminus).in;
    const auto tail = std::find(out.begin(), out.end(), s) - out.begin();
    const auto head = std::find(in.begin(), in.end(), s) - in.begin();
    os << "  p" << st.origin << " -> p" << st.terminus << " [color=" << palette(st.color);
    if (out.size() > 1) os << ", taillabel=\"" << tail << "\"";
    if (in.size() > 1) os << ", headlabel=\"" << head << "\"";
    os << "];\n";
  }
}

}  // namespace

std::string to_dot(const StrandDiagram& d, const ShiftGraph& g) {
  std::ostringstream os;
  os << "digraph strand {\n  ordering=out;\n  rankdir=TB;\n";
  std::set<PointId> terminals(d.sources.begin(), d.sources.end());
  terminals.insert(d.sinks.begin(), d.sinks.end());
  dot_body(os, d.graph, g, terminals);
  auto rank = [&](const std::vector<PointId>& ps, const char* which) {
    os << "  { rank=" << which << ";";
    for (PointId p : ps) os << " p" << p << ";";
    os << " }\n";
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      os << "  p" << ps[i] << " -> p" << ps[i + 1] << " [style=invis];\n";
    }
  };
  if (!d.sources.empty()) rank(d.sources, "source");
  if (!d.sinks.empty()) rank(d.sinks, "sink");
  os << "}\n";
  return os.str();
}

std::string to_dot(const ClosedDiagram& c, const ShiftGraph& g) {
  std::ostringstream os;
  os << "digraph closed {\n  ordering=out;\n";
  dot_body(os, c.graph, g, {});
  for (std::size_t i = 0; i + 1 < c.base_line.size(); ++i) {
    os << "  p" << c.base_line[i] << " -> p" << c.base_line[i + 1]
       << " [style=dashed, arrowhead=none, constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace shiftconj
