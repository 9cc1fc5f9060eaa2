#pragma once

// Quasi-transitivity of mixed graphs: the predicate, vertex statuses,
// witness verification, signatures and exhaustive enumeration of partial
// orientations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oqt/graph.hpp"

namespace oqt {

enum class VertexStatus { Source, Sink, ArcFree, Internal };

inline const char* to_string(VertexStatus s) {
  switch (s) {
    case VertexStatus::Source: return "source";
    case VertexStatus::Sink: return "sink";
    case VertexStatus::ArcFree: return "arc-free";
    case VertexStatus::Internal: return "internal";
  }
  return "?";
}

inline VertexStatus vertex_status(const MixedGraph& m, Vertex v) {
  detail::check_endpoint(v, m.order());
  const bool out = !m.out_neighbors(v).empty();
  const bool in = !m.in_neighbors(v).empty();
  if (out && in) return VertexStatus::Internal;
  if (out) return VertexStatus::Source;
  if (in) return VertexStatus::Sink;
  return VertexStatus::ArcFree;
}

inline bool is_source_or_sink(VertexStatus s) {
  return s == VertexStatus::Source || s == VertexStatus::Sink;
}

/// Why a mixed graph is not quasi-transitive. For an induced 2-dipath the
/// arcs are u->w->v with u, v non-adjacent; for an uncovered edge uv, w is
/// unused.
struct QtViolation {
  enum class Kind { InducedTwoDipath, UncoveredEdge };
  Kind kind = Kind::InducedTwoDipath;
  Vertex u = 0;
  Vertex w = 0;
  Vertex v = 0;

  friend bool operator==(const QtViolation&, const QtViolation&) = default;
};

inline std::string to_string(const QtViolation& x) {
  if (x.kind == QtViolation::Kind::InducedTwoDipath) {
    return "violation induced-2-dipath " + std::to_string(x.u) + " " + std::to_string(x.w) + " " +
           std::to_string(x.v);
  }
  return "violation uncovered-edge " + std::to_string(x.u) + " " + std::to_string(x.v);
}

/// True when some 2-dipath joins a and b (in either direction).
inline bool has_two_dipath_between(const MixedGraph& m, Vertex a, Vertex b) {
  for (Vertex w : m.out_neighbors(a)) {
    if (m.has_arc(w, b)) return true;
  }
  for (Vertex w : m.out_neighbors(b)) {
    if (m.has_arc(w, a)) return true;
  }
  return false;
}

/// First violation of quasi-transitivity, or nullopt when m is
/// quasi-transitive. Induced 2-dipaths are reported before uncovered edges,
/// each in increasing vertex order.
inline std::optional<QtViolation> check_qt(const MixedGraph& m) {
  for (Vertex w = 0; w < m.order(); ++w) {
    for (Vertex u : m.in_neighbors(w)) {
      for (Vertex v : m.out_neighbors(w)) {
        if (u != v && !m.adjacent(u, v)) {
          return QtViolation{QtViolation::Kind::InducedTwoDipath, u, w, v};
        }
      }
    }
  }
  for (const Edge& e : m.edges()) {
    if (!has_two_dipath_between(m, e.u, e.v)) {
      return QtViolation{QtViolation::Kind::UncoveredEdge, e.u, e.u, e.v};
    }
  }
  return std::nullopt;
}

inline bool is_qt(const MixedGraph& m) { return !check_qt(m).has_value(); }

/// Outcome of checking a mixed graph against a base graph.
struct WitnessReport {
  bool order_matches = true;
  std::vector<Edge> missing;  // in the base graph, absent from the witness
  std::vector<Edge> extra;    // in the witness, absent from the base graph
  std::optional<QtViolation> violation;

  bool ok() const { return order_matches && missing.empty() && extra.empty() && !violation; }

  std::vector<std::string> lines() const {
    std::vector<std::string> out;
    if (!order_matches) out.emplace_back("mismatch vertex-count");
    for (const Edge& e : missing) {
      out.push_back("mismatch missing " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    for (const Edge& e : extra) {
      out.push_back("mismatch extra " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    if (violation) out.push_back(to_string(*violation));
    return out;
  }
};

inline WitnessReport verify_witness(const Graph& g, const MixedGraph& m) {
  WitnessReport r;
  if (g.order() != m.order()) {
    r.order_matches = false;
    return r;
  }
  const Graph u = underlying(m);
  std::set_difference(g.edges().begin(), g.edges().end(), u.edges().begin(), u.edges().end(),
                      std::back_inserter(r.missing));
  std::set_difference(u.edges().begin(), u.edges().end(), g.edges().begin(), g.edges().end(),
                      std::back_inserter(r.extra));
  r.violation = check_qt(m);
  return r;
}

/// A quasi-transitive partial orientation of `base`.
class PartialOrientation {
 public:
  PartialOrientation(Graph base, MixedGraph mixed) : base_(std::move(base)), mixed_(std::move(mixed)) {
    if (!(underlying(mixed_) == base_)) {
      throw GraphError("mixed graph does not orient the base graph");
    }
  }

  const Graph& base() const { return base_; }
  const MixedGraph& mixed() const { return mixed_; }
  bool valid() const { return verify_witness(base_, mixed_).ok(); }

 private:
  Graph base_;
  MixedGraph mixed_;
};

// ---------------------------------------------------------------------------
// Per-edge encoding of partial orientations

/// Kept as an edge, oriented low->high, or oriented high->low.
enum class EdgeState : std::uint8_t { Kept = 0, Forward = 1, Reverse = 2 };

inline MixedGraph orient(const Graph& g, std::span<const EdgeState> states) {
  if (states.size() != g.size()) throw std::invalid_argument("one state per edge required");
  std::vector<Edge> kept;
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Edge& e = g.edges()[i];
    switch (states[i]) {
      case EdgeState::Kept: kept.push_back(e); break;
      case EdgeState::Forward: arcs.push_back({e.u, e.v}); break;
      case EdgeState::Reverse: arcs.push_back({e.v, e.u}); break;
    }
  }
  return MixedGraph(g.order(), std::move(kept), std::move(arcs));
}

/// Inverse of orient(); requires underlying(m) == g.
inline std::vector<EdgeState> edge_states(const Graph& g, const MixedGraph& m) {
  std::vector<EdgeState> s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    if (m.has_arc(e.u, e.v)) {
      s[i] = EdgeState::Forward;
    } else if (m.has_arc(e.v, e.u)) {
      s[i] = EdgeState::Reverse;
    } else if (m.has_edge(e.u, e.v)) {
      s[i] = EdgeState::Kept;
    } else {
      throw GraphError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " missing from mixed graph");
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kEnumerationEdgeCap = 16;

/// Calls visit(const MixedGraph&) for every one of the 3^m per-edge
/// assignments (Kept < Forward < Reverse, lexicographic over g.edges()) that
/// is quasi-transitive, in that order. Each constraint is tested as soon as
/// every edge it mentions is assigned, so failing prefixes are cut without
/// changing the set or order of results. visit may return false to stop.
/// Returns the number of orientations visited.
template <class Visitor>
std::size_t enumerate_qt(const Graph& g, Visitor&& visit) {
  const std::size_t m = g.size();
  if (m > kEnumerationEdgeCap) {
    throw EnumerationCapExceeded("enumeration limited to " + std::to_string(kEnumerationEdgeCap) +
                                 " edges, graph has " + std::to_string(m));
  }
  const auto& edges = g.edges();

  // Induced 2-dipath candidates: edge pairs sharing a centre whose outer
  // ends are non-adjacent. Checked when the later edge is assigned.
  struct PairCheck {
    std::size_t other;
    Vertex centre;
  };
  std::vector<std::vector<PairCheck>> pair_checks(m);
  // Coverage: a kept edge (a,b) needs some w with a->w->b or b->w->a.
  struct Support {
    std::size_t aw;
    std::size_t wb;
    Vertex w;
  };
  std::vector<std::vector<Support>> supports(m);
  std::vector<std::vector<std::size_t>> cover_checks(m);

  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = edges[i];
    for (Vertex centre : {e.u, e.v}) {
      const Vertex outer = centre == e.u ? e.v : e.u;
      for (Vertex y : g.neighbors(centre)) {
        if (y == outer || g.adjacent(outer, y)) continue;
        std::size_t j = *g.edge_index(centre, y);
        if (j < i) pair_checks[i].push_back({j, centre});
      }
    }
    std::size_t last = i;
    for (Vertex w : g.neighbors(e.u)) {
      if (!g.adjacent(w, e.v)) continue;
      Support s{*g.edge_index(e.u, w), *g.edge_index(w, e.v), w};
      last = std::max({last, s.aw, s.wb});
      supports[i].push_back(s);
    }
    cover_checks[last].push_back(i);
  }

  std::vector<EdgeState> state(m, EdgeState::Kept);
  auto tail_of = [&](std::size_t i) {
    return state[i] == EdgeState::Forward ? edges[i].u : edges[i].v;
  };
  auto points_into = [&](std::size_t i, Vertex x) {
    return state[i] != EdgeState::Kept && tail_of(i) != x;
  };
  auto points_out = [&](std::size_t i, Vertex x) {
    return state[i] != EdgeState::Kept && tail_of(i) == x;
  };
  auto consistent = [&](std::size_t i) {
    if (state[i] != EdgeState::Kept) {
      for (const PairCheck& pc : pair_checks[i]) {
        if (state[pc.other] == EdgeState::Kept) continue;
        if (points_into(i, pc.centre) != points_into(pc.other, pc.centre)) return false;
      }
    }
    for (std::size_t k : cover_checks[i]) {
      if (state[k] != EdgeState::Kept) continue;
      const Edge& e = edges[k];
      bool covered = false;
      for (const Support& s : supports[k]) {
        if ((points_out(s.aw, e.u) && points_out(s.wb, s.w)) ||
            (points_out(s.wb, e.v) && points_out(s.aw, s.w))) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    return true;
  };

  std::size_t visited = 0;
  bool stop = false;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      ++visited;
      if (!visit(orient(g, state))) stop = true;
      return;
    }
    for (EdgeState s : {EdgeState::Kept, EdgeState::Forward, EdgeState::Reverse}) {
      state[i] = s;
      if (consistent(i)) self(self, i + 1);
      if (stop) return;
    }
    state[i] = EdgeState::Kept;
  };
  recurse(recurse, 0);
  return visited;
}

inline std::vector<MixedGraph> all_qt_orientations(const Graph& g) {
  std::vector<MixedGraph> out;
  enumerate_qt(g, [&](const MixedGraph& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

inline std::size_t count_qt_orientations(const Graph& g) {
  return enumerate_qt(g, [](const MixedGraph&) { return true; });
}

inline std::optional<MixedGraph> first_qt_orientation(const Graph& g) {
  std::optional<MixedGraph> found;
  enumerate_qt(g, [&](const MixedGraph& h) {
    found = h;
    return false;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Signatures

enum class Sign : std::uint8_t { Minus = 0, Plus = 1 };

/// Source/sink pattern of three designated vertices; Plus means source.
struct Signature {
  std::array<Sign, 3> signs{};

  Signature complement() const {
    Signature c;
    for (std::size_t i = 0; i < 3; ++i) c.signs[i] = signs[i] == Sign::Plus ? Sign::Minus : Sign::Plus;
    return c;
  }
  bool constant() const { return signs[0] == signs[1] && signs[1] == signs[2]; }

  static Signature parse(std::string_view s) {
    if (s.size() != 3) throw std::invalid_argument("signature needs three characters");
    Signature r;
    for (std::size_t i = 0; i < 3; ++i) {
      if (s[i] == '+') {
        r.signs[i] = Sign::Plus;
      } else if (s[i] == '-') {
        r.signs[i] = Sign::Minus;
      } else {
        throw std::invalid_argument("signature characters must be + or -");
      }
    }
    return r;
  }

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
  std::string out;
  for (Sign x : s.signs) out.push_back(x == Sign::Plus ? '+' : '-');
  return out;
}

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Signature signature(const MixedGraph& m, const std::array<Vertex, 3>& triple) {
  Signature sig;
  for (std::size_t i = 0; i < 3; ++i) {
    switch (vertex_status(m, triple[i])) {
      case VertexStatus::Source: sig.signs[i] = Sign::Plus; break;
      case VertexStatus::Sink: sig.signs[i] = Sign::Minus; break;
      default:
        throw SignatureError("vertex " + std::to_string(triple[i]) + " is " +
                             to_string(vertex_status(m, triple[i])) + ", not a source or sink");
    }
  }
  return sig;
}

/// Every arc reversed, edges unchanged.
inline MixedGraph reverse_arcs(const MixedGraph& m) {
  std::vector<Arc> arcs;
  arcs.reserve(m.arcs().size());
  for (const Arc& a : m.arcs()) arcs.push_back({a.head, a.tail});
  return MixedGraph(m.order(), m.edges(), std::move(arcs));
}

}  // namespace oqt
