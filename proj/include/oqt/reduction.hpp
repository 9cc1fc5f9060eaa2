#pragma once

// Reduction from monotone not-all-equal 3-satisfiability: the clause gadget,
// its achievable signatures, the instance graph, and translations between
// assignments and orientation witnesses.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oqt/graph.hpp"
#include "oqt/qt.hpp"

namespace oqt {

class CnfError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monotone CNF with exactly three distinct variables (0-based) per clause.
class CnfInstance {
 public:
  using Clause = std::array<std::uint32_t, 3>;

  CnfInstance() = default;
  CnfInstance(std::size_t variables, std::vector<Clause> clauses)
      : variables_(variables), clauses_(std::move(clauses)) {
    for (std::size_t k = 0; k < clauses_.size(); ++k) {
      const Clause& c = clauses_[k];
      for (auto x : c) {
        if (x >= variables_) {
          throw CnfError("clause " + std::to_string(k + 1) + " uses variable " + std::to_string(x + 1) +
                         " beyond " + std::to_string(variables_));
        }
      }
      if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) {
        throw CnfError("clause " + std::to_string(k + 1) + " repeats a variable");
      }
    }
  }

  std::size_t variables() const { return variables_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;

 private:
  std::size_t variables_ = 0;
  std::vector<Clause> clauses_;
};

/// Truth value per variable.
using Assignment = std::vector<bool>;

inline bool verify_nae(const CnfInstance& y, const Assignment& f) {
  if (f.size() != y.variables()) return false;
  for (const auto& c : y.clauses()) {
    if (f[c[0]] == f[c[1]] && f[c[1]] == f[c[2]]) return false;
  }
  return true;
}

inline constexpr std::size_t kBruteNaeVariableCap = 24;

/// First NAE-satisfying assignment in binary counting order (variable i is
/// bit i, TRUE = 1), so the all-FALSE assignment comes first.
inline std::optional<Assignment> brute_nae(const CnfInstance& y) {
  const std::size_t n = y.variables();
  if (n > kBruteNaeVariableCap) {
    throw std::length_error("brute force limited to " + std::to_string(kBruteNaeVariableCap) + " variables");
  }
  std::vector<std::uint32_t> masks;
  for (const auto& c : y.clauses()) masks.push_back((1u << c[0]) | (1u << c[1]) | (1u << c[2]));
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool ok = true;
    for (std::uint32_t mk : masks) {
      const std::uint32_t on = static_cast<std::uint32_t>(bits) & mk;
      if (on == 0 || on == mk) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Assignment f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = (bits >> i) & 1u;
    return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Clause gadget

/// Nine vertices: path 0-1-2-3-4-5, hub 6 joined to 1..4 and 7, and 7
/// joined to 2, 3 and the leaf 8. The literal vertices are 1, 8 and 4; each
/// lies on an edge in no triangle whose other end is the partner (0, 7, 5).
struct ClauseGadget {
  Graph graph;
  std::array<Vertex, 3> literals{};
  std::array<Vertex, 3> partners{};
};

inline const std::vector<Edge>& gadget_edges() {
  static const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 7}, {3, 7},
                                       {6, 7}, {1, 6}, {4, 6}, {2, 6}, {3, 6}, {7, 8}};
  return edges;
}

inline ClauseGadget clause_gadget() {
  return {Graph(9, gadget_edges()), {1, 8, 4}, {0, 7, 5}};
}

struct GadgetSignatureReport {
  std::size_t orientations = 0;
  std::map<Signature, std::size_t> counts;
  /// First orientation of each signature in enumeration order.
  std::map<Signature, MixedGraph> templates;

  std::size_t count(const Signature& s) const {
    auto it = counts.find(s);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Enumerates every quasi-transitive partial orientation of the gadget and
/// groups them by the signature of the literal vertices.
inline GadgetSignatureReport gadget_signature_set() {
  const ClauseGadget gadget = clause_gadget();
  GadgetSignatureReport report;
  enumerate_qt(gadget.graph, [&](const MixedGraph& h) {
    ++report.orientations;
    const Signature s = signature(h, gadget.literals);
    ++report.counts[s];
    report.templates.try_emplace(s, h);
    return true;
  });
  return report;
}

inline const GadgetSignatureReport& gadget_signatures() {
  static const GadgetSignatureReport report = gadget_signature_set();
  return report;
}

// ---------------------------------------------------------------------------
// Instance graph

struct ReductionOptions {
  /// Keep the leaves 0 and 5 of each gadget after identification.
  bool keep_pendants = true;
};

/// Where each gadget and variable path landed in the instance graph.
struct ReductionMap {
  std::size_t vertex_count = 0;
  bool keep_pendants = true;
  /// Per clause, instance id of each gadget vertex (nullopt when dropped).
  std::vector<std::array<std::optional<Vertex>, 9>> gadgets;
  /// Per variable, ids of x_0, x_1, ...
  std::vector<std::vector<Vertex>> paths;

  std::array<Vertex, 3> clause_literals(std::size_t k) const {
    const auto lit = clause_gadget().literals;
    return {*gadgets[k][lit[0]], *gadgets[k][lit[1]], *gadgets[k][lit[2]]};
  }

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

struct Reduction {
  Graph graph;
  ReductionMap map;
};

/// Gadget edges plus path edges described by a map.
inline Graph reduction_graph(const ReductionMap& rm) {
  std::vector<Edge> edges;
  for (const auto& ids : rm.gadgets) {
    for (const Edge& e : gadget_edges()) {
      if (ids[e.u] && ids[e.v]) edges.emplace_back(*ids[e.u], *ids[e.v]);
    }
  }
  for (const auto& path : rm.paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.emplace_back(path[i], path[i + 1]);
  }
  return Graph(rm.vertex_count, std::move(edges));
}

/// One gadget per clause and one path per variable; clause k (1-based) has
/// its literal vertices identified with x_{2k} on the paths of its
/// variables. Paths of variables in some clause have 2|C|+2 vertices, other
/// paths have two.
inline Reduction build_reduction(const CnfInstance& y, const ReductionOptions& opts = {}) {
  const ClauseGadget gadget = clause_gadget();
  const std::size_t nc = y.clauses().size();
  ReductionMap rm;
  rm.keep_pendants = opts.keep_pendants;
  Vertex next = 0;

  std::vector<char> used(y.variables(), 0);
  for (const auto& c : y.clauses()) {
    for (auto x : c) used[x] = 1;
  }
  auto is_literal = [&](Vertex local) {
    return std::find(gadget.literals.begin(), gadget.literals.end(), local) != gadget.literals.end();
  };
  auto dropped = [&](Vertex local) {
    return !opts.keep_pendants && (local == gadget.partners[0] || local == gadget.partners[2]);
  };
  rm.gadgets.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    for (Vertex local = 0; local < 9; ++local) {
      if (!is_literal(local) && !dropped(local)) rm.gadgets[k][local] = next++;
    }
  }
  rm.paths.resize(y.variables());
  for (std::size_t x = 0; x < y.variables(); ++x) {
    const std::size_t len = used[x] ? 2 * nc + 2 : 2;
    for (std::size_t i = 0; i < len; ++i) rm.paths[x].push_back(next++);
  }
  for (std::size_t k = 0; k < nc; ++k) {
    for (std::size_t role = 0; role < 3; ++role) {
      rm.gadgets[k][gadget.literals[role]] = rm.paths[y.clauses()[k][role]][2 * (k + 1)];
    }
  }
  rm.vertex_count = next;
  Graph g = reduction_graph(rm);
  return {std::move(g), std::move(rm)};
}

class ReductionMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Recovers the instance from a map: clause k's literal in each role is the
/// variable whose path carries that vertex at position 2k.
inline CnfInstance instance_from_map(const ReductionMap& rm) {
  std::map<Vertex, std::pair<std::size_t, std::size_t>> where;  // id -> (variable, index)
  for (std::size_t x = 0; x < rm.paths.size(); ++x) {
    for (std::size_t i = 0; i < rm.paths[x].size(); ++i) where[rm.paths[x][i]] = {x, i};
  }
  std::vector<CnfInstance::Clause> clauses;
  for (std::size_t k = 0; k < rm.gadgets.size(); ++k) {
    CnfInstance::Clause c{};
    const auto lits = rm.clause_literals(k);
    for (std::size_t role = 0; role < 3; ++role) {
      auto it = where.find(lits[role]);
      if (it == where.end() || it->second.second != 2 * (k + 1)) {
        throw ReductionMapError("clause " + std::to_string(k + 1) + " literal vertex " +
                                std::to_string(lits[role]) + " is not at position " +
                                std::to_string(2 * (k + 1)) + " of a variable path");
      }
      c[role] = static_cast<std::uint32_t>(it->second.first);
    }
    clauses.push_back(c);
  }
  return CnfInstance(rm.paths.size(), std::move(clauses));
}

class NotNaeSatisfying : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidWitness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Sign truth_sign(bool value) { return value ? Sign::Plus : Sign::Minus; }

/// Orients each path alternately with x_0 a source iff x is TRUE and places
/// the gadget template whose signature matches each clause's truth values.
inline MixedGraph assignment_to_witness(const CnfInstance& y, const Assignment& f, const ReductionMap& rm) {
  if (f.size() != y.variables()) throw std::invalid_argument("assignment size does not match instance");
  if (!(instance_from_map(rm) == y)) throw ReductionMapError("map does not belong to this instance");
  const auto& templates = gadget_signatures().templates;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (std::size_t x = 0; x < rm.paths.size(); ++x) {
    const auto& p = rm.paths[x];
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const bool source = (i % 2 == 0) == f[x];
      arcs.push_back(source ? Arc{p[i], p[i + 1]} : Arc{p[i + 1], p[i]});
    }
  }
  for (std::size_t k = 0; k < y.clauses().size(); ++k) {
    const auto& c = y.clauses()[k];
    const Signature s{{truth_sign(f[c[0]]), truth_sign(f[c[1]]), truth_sign(f[c[2]])}};
    auto it = templates.find(s);
    if (it == templates.end()) {
      throw NotNaeSatisfying("clause " + std::to_string(k + 1) + " has all literals " +
                             (f[c[0]] ? "TRUE" : "FALSE"));
    }
    const auto& ids = rm.gadgets[k];
    for (const Edge& e : it->second.edges()) {
      if (ids[e.u] && ids[e.v]) edges.emplace_back(*ids[e.u], *ids[e.v]);
    }
    for (const Arc& a : it->second.arcs()) {
      if (ids[a.tail] && ids[a.head]) arcs.push_back({*ids[a.tail], *ids[a.head]});
    }
  }
  MixedGraph m(rm.vertex_count, std::move(edges), std::move(arcs));
  if (!verify_witness(reduction_graph(rm), m).ok()) {
    throw std::logic_error("assembled witness is not quasi-transitive");
  }
  return m;
}

/// x is TRUE iff x_0 is a source in the witness.
inline Assignment witness_to_assignment(const ReductionMap& rm, const MixedGraph& m) {
  const WitnessReport report = verify_witness(reduction_graph(rm), m);
  if (!report.ok()) throw InvalidWitness("invalid witness: " + report.lines().front());
  Assignment f(rm.paths.size());
  for (std::size_t x = 0; x < rm.paths.size(); ++x) {
    const VertexStatus st = vertex_status(m, rm.paths[x][0]);
    if (!is_source_or_sink(st)) {
      throw InvalidWitness("flag vertex of variable " + std::to_string(x + 1) + " is " + to_string(st));
    }
    f[x] = st == VertexStatus::Source;
  }
  return f;
}

}  // namespace oqt
