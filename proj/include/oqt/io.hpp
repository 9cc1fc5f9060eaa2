#pragma once

// Line-oriented text formats and DOT export.
//
//   p graph <n> <m>            e <u> <v>
//   p mixed <n> <me> <ma>      e <u> <v>   a <tail> <head>
//   p cnf <vars> <clauses>     <x> <y> <z> 0
//   p rmap <n> <vars> <clauses> <pendants>
//     gadget <k> <id0> .. <id8>   ('-' marks a dropped vertex)
//     clause <k> <u> <v> <w>
//     var <x> <id0> <id1> ...
//   v <x> <0|1>
//   r <u> <v> <w> <v'> <w'>
//
// Lines whose first token is 'c' are comments. Variables and clauses are 1-based,
// vertices 0-based.

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oqt/graph.hpp"
#include "oqt/reduction.hpp"
#include "oqt/structure.hpp"

namespace oqt {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

/// Non-comment, non-blank lines split on whitespace. Storage stays alive in
/// `text` for the lifetime of the returned views.
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++number;
    std::string_view line(text.data() + pos, end - pos);
    Line l{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) l.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!l.tokens.empty() && l.tokens[0] != "c") out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, std::uint64_t max = std::numeric_limits<std::uint32_t>::max()) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw FormatError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  if (v > max) throw FormatError(line, "value " + std::string(tok) + " out of range");
  return v;
}

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n) {
    throw FormatError(l.number, "expected " + std::to_string(n) + " fields on '" + std::string(l.tokens[0]) + "' line");
  }
}

inline const Line& header(const std::vector<Line>& lines, std::string_view kind) {
  if (lines.empty() || lines[0].tokens[0] != "p") throw FormatError(lines.empty() ? 0 : lines[0].number, "missing 'p' header");
  if (lines[0].tokens.size() < 2 || lines[0].tokens[1] != kind) {
    throw FormatError(lines[0].number, "expected 'p " + std::string(kind) + "' header");
  }
  return lines[0];
}

template <class F>
auto wrap_graph_errors(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const GraphError& e) {
    throw FormatError(line, e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graphs

inline MixedGraph parse_mixed(const std::string& text) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "p" || lines[0].tokens.size() < 2) {
    throw FormatError(lines.empty() ? 0 : lines[0].number, "missing 'p graph' or 'p mixed' header");
  }
  const auto& h = lines[0];
  const bool mixed = h.tokens[1] == "mixed";
  if (!mixed && h.tokens[1] != "graph") throw FormatError(h.number, "expected 'p graph' or 'p mixed' header");
  detail::expect_arity(h, mixed ? 5 : 4);
  const auto n = detail::parse_uint(h.tokens[2], h.number);
  const auto me = detail::parse_uint(h.tokens[3], h.number);
  const auto ma = mixed ? detail::parse_uint(h.tokens[4], h.number) : 0;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const bool is_arc = l.tokens[0] == "a";
    if (l.tokens[0] != "e" && !(is_arc && mixed)) {
      throw FormatError(l.number, "unexpected line '" + std::string(l.tokens[0]) + "'");
    }
    detail::expect_arity(l, 3);
    const auto u = static_cast<Vertex>(detail::parse_uint(l.tokens[1], l.number));
    const auto v = static_cast<Vertex>(detail::parse_uint(l.tokens[2], l.number));
    if (u >= n || v >= n) throw FormatError(l.number, "vertex out of range 0.." + std::to_string(n ? n - 1 : 0));
    if (u == v) throw FormatError(l.number, "self-loop at " + std::to_string(u));
    if (is_arc) arcs.push_back({u, v});
    else edges.emplace_back(u, v);
  }
  if (edges.size() != me) throw FormatError(h.number, "header declares " + std::to_string(me) + " edges, found " + std::to_string(edges.size()));
  if (arcs.size() != ma) throw FormatError(h.number, "header declares " + std::to_string(ma) + " arcs, found " + std::to_string(arcs.size()));
  return detail::wrap_graph_errors(0, [&] { return MixedGraph(n, std::move(edges), std::move(arcs)); });
}

inline Graph parse_graph(const std::string& text) {
  auto lines = detail::tokenize(text);
  detail::header(lines, "graph");
  MixedGraph m = parse_mixed(text);
  return Graph(m.order(), std::vector<Edge>(m.edges().begin(), m.edges().end()));
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "p graph " << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline std::string format_mixed(const MixedGraph& m) {
  std::ostringstream out;
  out << "p mixed " << m.order() << ' ' << m.edges().size() << ' ' << m.arcs().size() << '\n';
  for (const Edge& e : m.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (const Arc& a : m.arcs()) out << "a " << a.tail << ' ' << a.head << '\n';
  return out.str();
}

inline std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v = 0; v < g.order(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const MixedGraph& m) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (Vertex v = 0; v < m.order(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : m.edges()) out << "  " << e.u << " -> " << e.v << " [dir=none];\n";
  for (const Arc& a : m.arcs()) out << "  " << a.tail << " -> " << a.head << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// CNF

inline CnfInstance parse_cnf(const std::string& text) {
  auto lines = detail::tokenize(text);
  const auto& h = detail::header(lines, "cnf");
  detail::expect_arity(h, 4);
  const auto nv = detail::parse_uint(h.tokens[2], h.number);
  const auto nc = detail::parse_uint(h.tokens[3], h.number);
  std::vector<CnfInstance::Clause> clauses;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens.size() != 4 || l.tokens[3] != "0") {
      throw FormatError(l.number, "clause must have exactly three literals followed by 0");
    }
    CnfInstance::Clause c{};
    for (std::size_t j = 0; j < 3; ++j) {
      if (!l.tokens[j].empty() && l.tokens[j][0] == '-') {
        throw FormatError(l.number, "negative literal " + std::string(l.tokens[j]) + ": instance is not monotone");
      }
      const auto x = detail::parse_uint(l.tokens[j], l.number);
      if (x == 0 || x > nv) throw FormatError(l.number, "variable " + std::string(l.tokens[j]) + " out of range 1.." + std::to_string(nv));
      c[j] = static_cast<std::uint32_t>(x - 1);
    }
    clauses.push_back(c);
  }
  if (clauses.size() != nc) throw FormatError(h.number, "header declares " + std::to_string(nc) + " clauses, found " + std::to_string(clauses.size()));
  try {
    return CnfInstance(nv, std::move(clauses));
  } catch (const CnfError& e) {
    throw FormatError(0, e.what());
  }
}

inline std::string format_cnf(const CnfInstance& y) {
  std::ostringstream out;
  out << "p cnf " << y.variables() << ' ' << y.clauses().size() << '\n';
  for (const auto& c : y.clauses()) out << c[0] + 1 << ' ' << c[1] + 1 << ' ' << c[2] + 1 << " 0\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reduction map

inline std::string format_reduction_map(const ReductionMap& rm) {
  std::ostringstream out;
  out << "p rmap " << rm.vertex_count << ' ' << rm.paths.size() << ' ' << rm.gadgets.size() << ' '
      << (rm.keep_pendants ? 1 : 0) << '\n';
  for (std::size_t k = 0; k < rm.gadgets.size(); ++k) {
    out << "gadget " << k + 1;
    for (const auto& id : rm.gadgets[k]) {
      if (id) out << ' ' << *id;
      else out << " -";
    }
    out << '\n';
  }
  for (std::size_t k = 0; k < rm.gadgets.size(); ++k) {
    const auto lit = rm.clause_literals(k);
    out << "clause " << k + 1 << ' ' << lit[0] << ' ' << lit[1] << ' ' << lit[2] << '\n';
  }
  for (std::size_t x = 0; x < rm.paths.size(); ++x) {
    out << "var " << x + 1;
    for (Vertex id : rm.paths[x]) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

inline ReductionMap parse_reduction_map(const std::string& text) {
  auto lines = detail::tokenize(text);
  const auto& h = detail::header(lines, "rmap");
  detail::expect_arity(h, 6);
  ReductionMap rm;
  rm.vertex_count = detail::parse_uint(h.tokens[2], h.number);
  const auto nv = detail::parse_uint(h.tokens[3], h.number);
  const auto nc = detail::parse_uint(h.tokens[4], h.number);
  const auto pend = detail::parse_uint(h.tokens[5], h.number, 1);
  rm.keep_pendants = pend == 1;
  rm.gadgets.resize(nc);
  rm.paths.resize(nv);
  std::vector<char> seen_gadget(nc, 0), seen_var(nv, 0);
  auto vertex = [&](std::string_view tok, std::size_t line) {
    const auto v = detail::parse_uint(tok, line);
    if (v >= rm.vertex_count) throw FormatError(line, "vertex " + std::string(tok) + " out of range");
    return static_cast<Vertex>(v);
  };
  auto index = [&](std::string_view tok, std::size_t line, std::size_t count, std::vector<char>& seen, const char* what) {
    const auto k = detail::parse_uint(tok, line);
    if (k == 0 || k > count) throw FormatError(line, std::string(what) + " index " + std::string(tok) + " out of range");
    if (seen[k - 1]++) throw FormatError(line, std::string("duplicate ") + what + " " + std::string(tok));
    return static_cast<std::size_t>(k - 1);
  };
  std::vector<std::pair<std::size_t, std::array<Vertex, 3>>> clause_lines;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens[0] == "gadget") {
      detail::expect_arity(l, 11);
      const auto k = index(l.tokens[1], l.number, nc, seen_gadget, "gadget");
      for (std::size_t j = 0; j < 9; ++j) {
        if (l.tokens[2 + j] != "-") rm.gadgets[k][j] = vertex(l.tokens[2 + j], l.number);
      }
    } else if (l.tokens[0] == "clause") {
      detail::expect_arity(l, 5);
      const auto k = detail::parse_uint(l.tokens[1], l.number);
      if (k == 0 || k > nc) throw FormatError(l.number, "clause index out of range");
      clause_lines.push_back({k - 1, {vertex(l.tokens[2], l.number), vertex(l.tokens[3], l.number), vertex(l.tokens[4], l.number)}});
    } else if (l.tokens[0] == "var") {
      if (l.tokens.size() < 4) throw FormatError(l.number, "variable path needs at least two vertices");
      const auto x = index(l.tokens[1], l.number, nv, seen_var, "variable");
      for (std::size_t j = 2; j < l.tokens.size(); ++j) rm.paths[x].push_back(vertex(l.tokens[j], l.number));
    } else {
      throw FormatError(l.number, "unexpected line '" + std::string(l.tokens[0]) + "'");
    }
  }
  for (std::size_t k = 0; k < nc; ++k) {
    if (!seen_gadget[k]) throw FormatError(h.number, "missing gadget " + std::to_string(k + 1));
  }
  for (std::size_t x = 0; x < nv; ++x) {
    if (!seen_var[x]) throw FormatError(h.number, "missing variable " + std::to_string(x + 1));
  }
  const auto lit = clause_gadget().literals;
  for (const auto& [k, ids] : clause_lines) {
    for (std::size_t r = 0; r < 3; ++r) {
      if (rm.gadgets[k][lit[r]] != ids[r]) throw FormatError(0, "clause " + std::to_string(k + 1) + " disagrees with its gadget");
    }
  }
  for (std::size_t k = 0; k < nc; ++k) {
    for (Vertex l : lit) {
      if (!rm.gadgets[k][l]) throw FormatError(0, "gadget " + std::to_string(k + 1) + " is missing a literal vertex");
    }
  }
  try {
    (void)reduction_graph(rm);
  } catch (const GraphError& e) {
    throw FormatError(0, std::string("map does not describe a simple graph: ") + e.what());
  }
  return rm;
}

// ---------------------------------------------------------------------------
// Assignments and removal traces

inline std::string format_assignment(const Assignment& f) {
  std::ostringstream out;
  for (std::size_t x = 0; x < f.size(); ++x) out << "v " << x + 1 << ' ' << (f[x] ? 1 : 0) << '\n';
  return out.str();
}

/// Every variable 1..n must appear exactly once.
inline Assignment parse_assignment(const std::string& text) {
  auto lines = detail::tokenize(text);
  std::vector<std::optional<bool>> vals;
  for (const auto& l : lines) {
    if (l.tokens[0] != "v") throw FormatError(l.number, "unexpected line '" + std::string(l.tokens[0]) + "'");
    detail::expect_arity(l, 3);
    const auto x = detail::parse_uint(l.tokens[1], l.number);
    const auto b = detail::parse_uint(l.tokens[2], l.number, 1);
    if (x == 0) throw FormatError(l.number, "variables are numbered from 1");
    if (vals.size() < x) vals.resize(x);
    if (vals[x - 1]) throw FormatError(l.number, "duplicate variable " + std::to_string(x));
    vals[x - 1] = b == 1;
  }
  Assignment f(vals.size());
  for (std::size_t x = 0; x < vals.size(); ++x) {
    if (!vals[x]) throw FormatError(0, "missing variable " + std::to_string(x + 1));
    f[x] = *vals[x];
  }
  return f;
}

inline std::string format_trace(const RemovalTrace& trace) {
  std::ostringstream out;
  for (const Removal& r : trace) out << "r " << r.u << ' ' << r.v << ' ' << r.w << ' ' << r.v_outer << ' ' << r.w_outer << '\n';
  return out.str();
}

inline RemovalTrace parse_trace(const std::string& text) {
  RemovalTrace trace;
  for (const auto& l : detail::tokenize(text)) {
    if (l.tokens[0] != "r") throw FormatError(l.number, "unexpected line '" + std::string(l.tokens[0]) + "'");
    detail::expect_arity(l, 6);
    Removal r;
    r.u = static_cast<Vertex>(detail::parse_uint(l.tokens[1], l.number));
    r.v = static_cast<Vertex>(detail::parse_uint(l.tokens[2], l.number));
    r.w = static_cast<Vertex>(detail::parse_uint(l.tokens[3], l.number));
    r.v_outer = static_cast<Vertex>(detail::parse_uint(l.tokens[4], l.number));
    r.w_outer = static_cast<Vertex>(detail::parse_uint(l.tokens[5], l.number));
    trace.push_back(r);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Files

class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  return detail::slurp(in);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << content;
  if (!out) throw FileError("write failed for " + path);
}

}  // namespace oqt
