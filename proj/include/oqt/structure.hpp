#pragma once

// Polynomial structure results: the removable-vertex reduction for maximum
// degree three, detection of the forbidden graph Pi, the degree-three and
// girth-four decision procedures, and the universal embedding.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oqt/graph.hpp"
#include "oqt/qt.hpp"
#include "oqt/solver.hpp"

namespace oqt {

class DegreeBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GirthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_max_degree3(const Graph& g) {
  if (g.max_degree() > 3) {
    throw DegreeBoundError("maximum degree " + std::to_string(g.max_degree()) + " exceeds 3");
  }
}

/// One deleted vertex u with its neighbours v, w and their other neighbours
/// v' (of v) and w' (of w), all in ids of the unreduced graph.
struct Removal {
  Vertex u = 0;
  Vertex v = 0;
  Vertex w = 0;
  Vertex v_outer = 0;
  Vertex w_outer = 0;

  friend bool operator==(const Removal&, const Removal&) = default;
};

using RemovalTrace = std::vector<Removal>;

/// Degree two, neighbours adjacent with degree three, and u their only
/// common neighbour.
namespace detail {

inline bool removable_unchecked(const Graph& g, Vertex u) {
  if (g.degree(u) != 2) return false;
  const Vertex v = g.neighbors(u)[0];
  const Vertex w = g.neighbors(u)[1];
  if (!g.adjacent(v, w) || g.degree(v) != 3 || g.degree(w) != 3) return false;
  std::size_t common = 0;
  for (Vertex x : g.neighbors(v)) common += g.adjacent(x, w) ? 1 : 0;
  return common == 1;
}

}  // namespace detail

inline bool is_removable(const Graph& g, Vertex u) {
  require_max_degree3(g);
  detail::check_endpoint(u, g.order());
  return detail::removable_unchecked(g, u);
}

inline std::vector<Vertex> removable_vertices(const Graph& g) {
  require_max_degree3(g);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (detail::removable_unchecked(g, u)) out.push_back(u);
  }
  return out;
}

/// The graph with every removable vertex deleted at once.
struct ReducedGraph {
  Graph original;
  Subgraph reduced;  // reduced.original maps reduced ids back to `original`
  RemovalTrace trace;
};

inline ReducedGraph reduce_removable(const Graph& g) {
  require_max_degree3(g);
  ReducedGraph r{g, {}, {}};
  const auto removable = removable_vertices(g);
  for (Vertex u : removable) {
    Removal rec;
    rec.u = u;
    rec.v = g.neighbors(u)[0];
    rec.w = g.neighbors(u)[1];
    for (Vertex x : g.neighbors(rec.v)) {
      if (x != u && x != rec.w) rec.v_outer = x;
    }
    for (Vertex x : g.neighbors(rec.w)) {
      if (x != u && x != rec.v) rec.w_outer = x;
    }
    r.trace.push_back(rec);
  }
  r.reduced = delete_vertices(g, removable);
  if (!removable_vertices(r.reduced.graph).empty()) {
    throw std::logic_error("reduction left a removable vertex");
  }
  return r;
}

/// Triangle uvw with pendant neighbours u', v', w' (not necessarily induced).
struct PiEmbedding {
  std::array<Vertex, 3> triangle{};
  std::array<Vertex, 3> pendants{};
};

inline std::optional<PiEmbedding> detect_pi(const Graph& g) {
  require_max_degree3(g);
  for (const Edge& e : g.edges()) {
    for (Vertex c : g.neighbors(e.v)) {
      if (c <= e.v || !g.adjacent(e.u, c)) continue;
      const std::array<Vertex, 3> tri{e.u, e.v, c};
      PiEmbedding pi{tri, {}};
      bool ok = true;
      for (std::size_t i = 0; i < 3 && ok; ++i) {
        if (g.degree(tri[i]) != 3) {
          ok = false;
          break;
        }
        for (Vertex x : g.neighbors(tri[i])) {
          if (x != tri[0] && x != tri[1] && x != tri[2]) pi.pendants[i] = x;
        }
      }
      if (!ok) continue;
      if (pi.pendants[0] != pi.pendants[1] && pi.pendants[1] != pi.pendants[2] &&
          pi.pendants[0] != pi.pendants[2]) {
        return pi;
      }
    }
  }
  return std::nullopt;
}

/// Adjacency inspections made by decide_deg3, for complexity checks.
struct Deg3Work {
  std::uint64_t steps = 0;
};

/// Maximum degree three: after deleting removable vertices, the graph
/// admits a quasi-transitive partial orientation iff it contains no Pi and
/// its triangle-free edges form a bipartite graph.
inline bool decide_deg3(const Graph& g, Deg3Work* work = nullptr) {
  require_max_degree3(g);
  std::uint64_t steps = 0;
  std::vector<Vertex> removable;
  for (Vertex u = 0; u < g.order(); ++u) {
    steps += 1 + g.degree(u);
    if (g.degree(u) == 2) steps += 2 * 3;
    if (detail::removable_unchecked(g, u)) removable.push_back(u);
  }
  const Graph h = delete_vertices(g, removable).graph;
  steps += g.order() + g.size();

  bool pi = false;
  std::vector<Edge> free_edges;
  for (const Edge& e : h.edges()) {
    steps += h.degree(e.u) + h.degree(e.v);
    if (!in_triangle(h, e)) free_edges.push_back(e);
    for (Vertex c : h.neighbors(e.v)) {
      steps += 1 + 3 * 3;
      if (c <= e.v || !h.adjacent(e.u, c)) continue;
      const std::array<Vertex, 3> tri{e.u, e.v, c};
      std::array<Vertex, 3> outer{};
      bool all3 = true;
      for (std::size_t i = 0; i < 3; ++i) {
        all3 = all3 && h.degree(tri[i]) == 3;
        for (Vertex x : h.neighbors(tri[i])) {
          if (x != tri[0] && x != tri[1] && x != tri[2]) outer[i] = x;
        }
      }
      pi = pi || (all3 && outer[0] != outer[1] && outer[1] != outer[2] && outer[0] != outer[2]);
    }
  }
  const Graph free_graph = edge_subgraph(h, EdgeSet(h, free_edges)).graph;
  steps += free_graph.order() + 2 * free_graph.size();
  const bool odd = has_odd_cycle(free_graph);
  if (work) work->steps += steps;
  return !pi && !odd;
}

/// Girth at least four: bipartite graphs are oriented from one colour class
/// to the other; graphs with an odd cycle have no orientation.
inline std::optional<PartialOrientation> decide_girth4(const Graph& g) {
  if (auto gi = girth(g); gi && *gi < 4) throw GirthError("graph contains a triangle");
  auto color = two_coloring(g);
  if (!color) return std::nullopt;
  std::vector<Arc> arcs;
  for (const Edge& e : g.edges()) {
    arcs.push_back((*color)[e.u] == 0 ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  return PartialOrientation(g, MixedGraph(g.order(), {}, std::move(arcs)));
}

/// Root oriented graph (each edge uv, u < v, replaced by u -> x -> v with a
/// fresh x = n + edge index) and its undirected square, which contains g as
/// the subgraph induced on the original vertices.
struct UniversalEmbedding {
  Graph square;
  MixedGraph root;
};

inline UniversalEmbedding embed_universal(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    const Vertex x = static_cast<Vertex>(n + i);
    arcs.push_back({e.u, x});
    arcs.push_back({x, e.v});
  }
  MixedGraph root(n + g.size(), {}, std::move(arcs));
  Graph square = undirected_square(root);
  return {std::move(square), std::move(root)};
}

class ReinsertionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Extends a witness for the reduced graph to one for the original graph by
/// replaying the trace: the path v'-v-w-w' alternates, and u becomes the
/// centre of a 2-dipath from the source among v, w to the sink.
inline PartialOrientation reinsert_removable(const PartialOrientation& witness, const ReducedGraph& reduction) {
  const auto& map = reduction.reduced.original;
  if (!(witness.base() == reduction.reduced.graph)) {
    throw ReinsertionError("witness is not an orientation of the reduced graph");
  }
  if (auto report = verify_witness(witness.base(), witness.mixed()); !report.ok()) {
    throw ReinsertionError("invalid witness: " + report.lines().front());
  }
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (const Edge& e : witness.mixed().edges()) edges.emplace_back(map[e.u], map[e.v]);
  for (const Arc& a : witness.mixed().arcs()) arcs.push_back({map[a.tail], map[a.head]});
  auto has_arc = [&](Vertex t, Vertex h) {
    return std::find(arcs.begin(), arcs.end(), Arc{t, h}) != arcs.end();
  };
  for (auto it = reduction.trace.rbegin(); it != reduction.trace.rend(); ++it) {
    const Removal& r = *it;
    if (has_arc(r.v_outer, r.v) && has_arc(r.w, r.v) && has_arc(r.w, r.w_outer)) {
      arcs.push_back({r.w, r.u});
      arcs.push_back({r.u, r.v});
    } else if (has_arc(r.v, r.v_outer) && has_arc(r.v, r.w) && has_arc(r.w_outer, r.w)) {
      arcs.push_back({r.v, r.u});
      arcs.push_back({r.u, r.w});
    } else {
      throw ReinsertionError("path around removed vertex " + std::to_string(r.u) + " is not alternating");
    }
  }
  PartialOrientation out(reduction.original, MixedGraph(reduction.original.order(), std::move(edges), std::move(arcs)));
  if (!out.valid()) throw std::logic_error("reinsertion produced an invalid witness");
  return out;
}

/// Witness for a graph of maximum degree three: the exact solver on the
/// reduced graph followed by reinsertion. nullopt when none exists.
inline SolveResult deg3_witness(const Graph& g, const SolveOptions& opts = {}) {
  require_max_degree3(g);
  const ReducedGraph r = reduce_removable(g);
  SolveResult res = decide_qt(r.reduced.graph, opts);
  if (res.outcome == Outcome::Yes) res.witness = reinsert_removable(*res.witness, r);
  return res;
}

}  // namespace oqt
