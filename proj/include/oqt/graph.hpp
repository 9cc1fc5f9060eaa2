#pragma once

// Simple graphs, mixed graphs and the structural queries used by the
// orientation algorithms: squares, triangle-free edges, bipartiteness,
// girth, articulation points and independent vertex cuts.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oqt {

using Vertex = std::uint32_t;

/// Violated structural precondition or invariant (loops, duplicates,
/// out-of-range endpoints, edge not in host, ...).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

namespace detail {

inline void check_endpoint(Vertex x, std::size_t n) {
  if (x >= n) {
    throw GraphError("endpoint " + std::to_string(x) + " out of range for " + std::to_string(n) +
                     " vertices");
  }
}

template <class T>
bool sorted_contains(const std::vector<T>& xs, const T& x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

}  // namespace detail

/// Finite simple undirected graph on vertices 0..n-1. Immutable.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n) {}

  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n) {
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
      detail::check_endpoint(e.v, n_);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
      throw GraphError("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
    }
    for (const Edge& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }

  /// Sorted lexicographically; position in this vector is the edge index.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nb : adj_) d = std::max(d, nb.size());
    return d;
  }

  bool adjacent(Vertex a, Vertex b) const {
    return a < n_ && detail::sorted_contains(adj_[a], b);
  }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    const Edge e(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Graph with disjoint sets of undirected edges and arcs. No loops, no
/// digons, no pair carrying both an edge and an arc. Immutable.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(std::size_t n) : n_(n), edge_adj_(n), out_(n), in_(n) {}

  MixedGraph(std::size_t n, std::vector<Edge> edges, std::vector<Arc> arcs)
      : n_(n), edges_(std::move(edges)), arcs_(std::move(arcs)), edge_adj_(n), out_(n), in_(n) {
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
      detail::check_endpoint(e.v, n_);
    }
    for (const Arc& a : arcs_) {
      if (a.tail == a.head) throw GraphError("loop arc at vertex " + std::to_string(a.tail));
      detail::check_endpoint(a.tail, n_);
      detail::check_endpoint(a.head, n_);
    }
    std::sort(edges_.begin(), edges_.end());
    std::sort(arcs_.begin(), arcs_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw GraphError("duplicate edge in mixed graph");
    }
    if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end()) {
      throw GraphError("duplicate arc in mixed graph");
    }
    std::vector<Edge> pairs;
    pairs.reserve(edges_.size() + arcs_.size());
    pairs.insert(pairs.end(), edges_.begin(), edges_.end());
    for (const Arc& a : arcs_) pairs.emplace_back(a.tail, a.head);
    std::sort(pairs.begin(), pairs.end());
    if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end()) {
      throw GraphError("pair " + std::to_string(dup->u) + " " + std::to_string(dup->v) +
                       " carries two adjacencies");
    }
    for (const Edge& e : edges_) {
      edge_adj_[e.u].push_back(e.v);
      edge_adj_[e.v].push_back(e.u);
    }
    for (const Arc& a : arcs_) {
      out_[a.tail].push_back(a.head);
      in_[a.head].push_back(a.tail);
    }
    for (auto* lists : {&edge_adj_, &out_, &in_}) {
      for (auto& l : *lists) std::sort(l.begin(), l.end());
    }
  }

  std::size_t order() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
  std::span<const Vertex> edge_neighbors(Vertex v) const { return edge_adj_[v]; }

  bool has_edge(Vertex a, Vertex b) const {
    return a < n_ && detail::sorted_contains(edge_adj_[a], b);
  }
  bool has_arc(Vertex tail, Vertex head) const {
    return tail < n_ && detail::sorted_contains(out_[tail], head);
  }
  /// Joined by an edge or by an arc in either direction.
  bool adjacent(Vertex a, Vertex b) const {
    return has_edge(a, b) || has_arc(a, b) || has_arc(b, a);
  }

  friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> edge_adj_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Subset of the edges of a host graph, kept sorted.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(const Graph& host, std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) {
      if (!host.adjacent(e.u, e.v)) {
        throw GraphError("pair " + std::to_string(e.u) + " " + std::to_string(e.v) +
                         " is not an edge of the host graph");
      }
    }
  }

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(const Edge& e) const { return detail::sorted_contains(edges_, e); }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;
};

/// A graph re-indexed from a subset of a host; original[i] is the host id of
/// vertex i.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;
};

// ---------------------------------------------------------------------------
// Squares

inline Graph underlying(const MixedGraph& m) {
  std::vector<Edge> es(m.edges());
  for (const Arc& a : m.arcs()) es.emplace_back(a.tail, a.head);
  return Graph(m.order(), std::move(es));
}

/// One added edge together with the centre of a 2-dipath joining its ends.
struct SquareEdge {
  Edge edge;
  Vertex via = 0;
};

/// Pairs at directed distance two that are not yet adjacent, each with the
/// first (lowest) centre vertex found.
inline std::vector<SquareEdge> square_edges(const MixedGraph& m) {
  std::vector<SquareEdge> added;
  for (Vertex w = 0; w < m.order(); ++w) {
    for (Vertex u : m.in_neighbors(w)) {
      for (Vertex v : m.out_neighbors(w)) {
        if (u == v || m.adjacent(u, v)) continue;
        added.push_back({Edge(u, v), w});
      }
    }
  }
  std::sort(added.begin(), added.end(), [](const SquareEdge& a, const SquareEdge& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.via < b.via;
  });
  added.erase(std::unique(added.begin(), added.end(),
                          [](const SquareEdge& a, const SquareEdge& b) { return a.edge == b.edge; }),
              added.end());
  return added;
}

/// Arcs unchanged; every non-adjacent pair joined by a 2-dipath gains an edge.
inline MixedGraph mixed_square(const MixedGraph& m) {
  std::vector<Edge> es(m.edges());
  for (const SquareEdge& s : square_edges(m)) es.push_back(s.edge);
  return MixedGraph(m.order(), std::move(es), m.arcs());
}

inline Graph undirected_square(const MixedGraph& m) { return underlying(mixed_square(m)); }

/// The mixed graph obtained by deleting every undirected edge.
inline MixedGraph arcs_only(const MixedGraph& m) { return MixedGraph(m.order(), {}, m.arcs()); }

// ---------------------------------------------------------------------------
// Edge subsets and induced subgraphs

inline bool in_triangle(const Graph& g, const Edge& e) {
  auto a = g.neighbors(e.u);
  auto b = g.neighbors(e.v);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

/// Edges whose endpoints have no common neighbour.
inline EdgeSet triangle_free_edges(const Graph& g) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (!in_triangle(g, e)) out.push_back(e);
  }
  return EdgeSet(g, std::move(out));
}

/// Graph formed from an edge subset: its vertices are the endpoints of x.
inline Subgraph edge_subgraph(const Graph& g, const EdgeSet& x) {
  for (const Edge& e : x.edges()) {
    if (!g.adjacent(e.u, e.v)) {
      throw GraphError("pair " + std::to_string(e.u) + " " + std::to_string(e.v) +
                       " is not an edge of the graph");
    }
  }
  std::vector<Vertex> ids;
  for (const Edge& e : x.edges()) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto local = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  std::vector<Edge> es;
  es.reserve(x.size());
  for (const Edge& e : x.edges()) es.emplace_back(local(e.u), local(e.v));
  return {Graph(ids.size(), std::move(es)), std::move(ids)};
}

/// Subgraph induced by `keep` (any order, duplicates ignored); vertices are
/// re-indexed in increasing original id.
inline Subgraph induced_subgraph(const Graph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Vertex> local(g.order(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    detail::check_endpoint(keep[i], g.order());
    local[keep[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> es;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != static_cast<Vertex>(-1) && local[e.v] != static_cast<Vertex>(-1)) {
      es.emplace_back(local[e.u], local[e.v]);
    }
  }
  return {Graph(keep.size(), std::move(es)), std::move(keep)};
}

inline Subgraph delete_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<char> gone(g.order(), 0);
  for (Vertex v : removed) {
    detail::check_endpoint(v, g.order());
    gone[v] = 1;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!gone[v]) keep.push_back(v);
  }
  return induced_subgraph(g, std::move(keep));
}

// ---------------------------------------------------------------------------
// Connectivity, bipartiteness, girth

/// Component label per vertex (labels assigned in order of lowest vertex)
/// with `blocked` vertices labelled -1.
inline std::vector<int> component_labels(const Graph& g, std::span<const char> blocked = {}) {
  std::vector<int> label(g.order(), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (label[s] != -1 || (!blocked.empty() && blocked[s])) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (label[y] == -1 && (blocked.empty() || !blocked[y])) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  auto label = component_labels(g);
  int count = 0;
  for (int l : label) count = std::max(count, l + 1);
  std::vector<std::vector<Vertex>> comps(count);
  for (Vertex v = 0; v < g.order(); ++v) comps[label[v]].push_back(v);
  return comps;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Proper 2-colouring (colour 0 for the lowest vertex of each component),
/// or nullopt when the graph has an odd cycle.
inline std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g) {
  std::vector<std::uint8_t> color(g.order(), 2);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (color[s] != 2) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (color[y] == 2) {
          color[y] = static_cast<std::uint8_t>(1 - color[x]);
          q.push(y);
        } else if (color[y] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

/// Vertex sequence of some odd cycle (consecutive entries adjacent, last
/// adjacent to first), or nullopt for bipartite graphs.
inline std::optional<std::vector<Vertex>> odd_cycle(const Graph& g) {
  const Vertex none = static_cast<Vertex>(-1);
  std::vector<Vertex> parent(g.order(), none);
  std::vector<std::size_t> depth(g.order(), 0);
  std::vector<char> seen(g.order(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = x;
          depth[y] = depth[x] + 1;
          q.push(y);
        } else if (depth[y] % 2 == depth[x] % 2) {
          // Same BFS parity: tree paths to the common ancestor close an odd cycle.
          std::vector<Vertex> left{x};
          std::vector<Vertex> right{y};
          Vertex a = x;
          Vertex b = y;
          while (a != b) {
            if (depth[a] >= depth[b]) {
              a = parent[a];
              left.push_back(a);
            } else {
              b = parent[b];
              right.push_back(b);
            }
          }
          right.pop_back();
          std::vector<Vertex> cycle(left);
          cycle.insert(cycle.end(), right.rbegin(), right.rend());
          return cycle;
        }
      }
    }
  }
  return std::nullopt;
}

inline bool has_odd_cycle(const Graph& g) { return !two_coloring(g).has_value(); }

/// Length of a shortest cycle; nullopt for forests.
inline std::optional<std::size_t> girth(const Graph& g) {
  std::optional<std::size_t> best;
  const Vertex none = static_cast<Vertex>(-1);
  std::vector<std::size_t> dist(g.order());
  std::vector<Vertex> parent(g.order());
  for (Vertex s = 0; s < g.order(); ++s) {
    std::fill(dist.begin(), dist.end(), static_cast<std::size_t>(-1));
    std::fill(parent.begin(), parent.end(), none);
    dist[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == static_cast<std::size_t>(-1)) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push(y);
        } else if (parent[x] != y) {
          std::size_t len = dist[x] + dist[y] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

/// Articulation points, sorted.
inline std::vector<Vertex> cut_vertices(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, unvisited), low(n, 0);
  std::vector<char> is_cut(n, 0);
  std::size_t timer = 0;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
    std::size_t children;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != unvisited) continue;
    std::vector<Frame> stack{{root, root, 0, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        Vertex y = nb[f.next++];
        if (disc[y] == unvisited) {
          ++f.children;
          disc[y] = low[y] = timer++;
          stack.push_back({y, f.v, 0, 0});
        } else if (y != f.parent) {
          low[f.v] = std::min(low[f.v], disc[y]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = 1;
        break;
      }
      Frame& up = stack.back();
      low[up.v] = std::min(low[up.v], low[done.v]);
      if (up.v != root && low[done.v] >= disc[up.v]) is_cut[up.v] = 1;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back(v);
  }
  return out;
}

/// Independent set I whose removal separates V1 from V2. Each side may be a
/// union of components of g - I.
struct VertexCut {
  std::vector<Vertex> separator;
  std::vector<Vertex> side1;
  std::vector<Vertex> side2;
};

/// Checks the defining conditions of an independent vertex cut.
inline bool is_independent_cut(const Graph& g, const VertexCut& cut) {
  std::vector<int> part(g.order(), -1);
  auto mark = [&](const std::vector<Vertex>& vs, int p) {
    for (Vertex v : vs) {
      if (v >= g.order() || part[v] != -1) return false;
      part[v] = p;
    }
    return true;
  };
  if (cut.separator.empty() || cut.side1.empty() || cut.side2.empty()) return false;
  if (!mark(cut.separator, 0) || !mark(cut.side1, 1) || !mark(cut.side2, 2)) return false;
  for (int p : part) {
    if (p == -1) return false;
  }
  for (const Edge& e : g.edges()) {
    int a = part[e.u];
    int b = part[e.v];
    if (a == 0 && b == 0) return false;
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) return false;
  }
  for (Vertex s : cut.separator) {
    bool one = false;
    bool two = false;
    for (Vertex y : g.neighbors(s)) {
      one = one || part[y] == 1;
      two = two || part[y] == 2;
    }
    if (!one || !two) return false;
  }
  return true;
}

/// Every independent vertex cut with |I| <= max_size. Sets are enumerated in
/// lexicographic order; for each, every split of the components of g - I into
/// two nonempty groups is reported once (side1 holds the component of the
/// lowest remaining vertex). Exponential in max_size and in the number of
/// components of g - I.
inline std::vector<VertexCut> independent_vertex_cuts(const Graph& g, std::size_t max_size = 3) {
  if (max_size == 0) throw std::invalid_argument("max_size must be at least 1");
  if (!is_connected(g)) throw std::invalid_argument("independent_vertex_cuts needs a connected graph");
  std::vector<VertexCut> result;
  const std::size_t n = g.order();
  std::vector<Vertex> chosen;
  std::vector<char> blocked(n, 0);

  auto examine = [&]() {
    auto label = component_labels(g, blocked);
    int comps = 0;
    for (int l : label) comps = std::max(comps, l + 1);
    if (comps < 2) return;
    if (comps > 20) throw std::length_error("too many components to enumerate cut sides");
    // Which components each separator vertex touches.
    std::vector<std::uint32_t> touch(chosen.size(), 0);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (Vertex y : g.neighbors(chosen[i])) {
        if (label[y] >= 0) touch[i] |= 1u << label[y];
      }
    }
    const std::uint32_t all = (1u << comps) - 1;
    for (std::uint32_t mask = 1; mask < all; mask += 2) {  // component 0 always in side1
      bool ok = true;
      for (std::uint32_t t : touch) ok = ok && (t & mask) && (t & ~mask & all);
      if (!ok) continue;
      VertexCut cut;
      cut.separator = chosen;
      for (Vertex v = 0; v < n; ++v) {
        if (label[v] < 0) continue;
        ((mask >> label[v]) & 1u ? cut.side1 : cut.side2).push_back(v);
      }
      result.push_back(std::move(cut));
    }
  };

  auto recurse = [&](auto&& self, Vertex start) -> void {
    for (Vertex v = start; v < n; ++v) {
      bool independent = true;
      for (Vertex c : chosen) independent = independent && !g.adjacent(c, v);
      if (!independent) continue;
      chosen.push_back(v);
      blocked[v] = 1;
      examine();
      if (chosen.size() < max_size) self(self, v + 1);
      blocked[v] = 0;
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return result;
}

}  // namespace oqt
