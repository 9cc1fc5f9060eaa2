#pragma once

// Exact decision procedure for quasi-transitive partial orientations:
// backtracking over per-edge domains {kept, forward, reverse} with
// constraint propagation, split along independent vertex cuts of size at
// most three when one exists.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "oqt/graph.hpp"
#include "oqt/qt.hpp"

namespace oqt {

enum class Outcome { Yes, No, BudgetExceeded };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "YES";
    case Outcome::No: return "NO";
    case Outcome::BudgetExceeded: return "BUDGET";
  }
  return "?";
}

struct SolveOptions {
  /// Branching nodes allowed per connected component.
  std::uint64_t node_limit = 20'000'000;
  bool decompose = true;
  /// Components are solved concurrently when > 1; results do not depend on it.
  unsigned threads = 1;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t decompositions = 0;
  std::uint64_t memo_hits = 0;
};

struct SolveResult {
  Outcome outcome = Outcome::No;
  std::optional<PartialOrientation> witness;
  SolveStats stats;
};

/// Per-vertex restriction on the status in the orientation sought.
enum class StatusConstraint : std::uint8_t { Any, Source, Sink, SourceOrSink };

namespace detail {

// Edge domain bits.
inline constexpr std::uint8_t kKept = 1;
inline constexpr std::uint8_t kFwd = 2;
inline constexpr std::uint8_t kRev = 4;
// Vertex domain bits.
inline constexpr std::uint8_t kSrc = 1;
inline constexpr std::uint8_t kSnk = 2;
inline constexpr std::uint8_t kInt = 4;
inline constexpr std::uint8_t kAnyStatus = kSrc | kSnk | kInt;

inline std::uint8_t status_mask(StatusConstraint c) {
  switch (c) {
    case StatusConstraint::Any: return kAnyStatus;
    case StatusConstraint::Source: return kSrc;
    case StatusConstraint::Sink: return kSnk;
    case StatusConstraint::SourceOrSink: return kSrc | kSnk;
  }
  return kAnyStatus;
}

struct BudgetExhausted {};

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    if (++count_ > limit_) throw BudgetExhausted{};
  }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

/// Backtracking search on one graph with initial vertex status domains.
class FlatSearch {
 public:
  FlatSearch(const Graph& g, std::vector<std::uint8_t> vertex_domains, NodeCounter& counter)
      : g_(g), counter_(counter), init_vdom_(std::move(vertex_domains)) {
    const auto& edges = g_.edges();
    const std::size_t m = edges.size();
    conflicts_.resize(m);
    supports_.resize(m);
    dependents_.resize(m);
    apex_.resize(g_.order());
    incident_.resize(g_.order());
    for (std::size_t i = 0; i < m; ++i) {
      const Edge& e = edges[i];
      incident_[e.u].push_back(static_cast<std::uint32_t>(i));
      incident_[e.v].push_back(static_cast<std::uint32_t>(i));
      for (Vertex centre : {e.u, e.v}) {
        const Vertex outer = centre == e.u ? e.v : e.u;
        for (Vertex y : g_.neighbors(centre)) {
          if (y == outer || g_.adjacent(outer, y)) continue;
          conflicts_[i].push_back({static_cast<std::uint32_t>(*g_.edge_index(centre, y)), centre});
        }
      }
      for (Vertex w : g_.neighbors(e.u)) {
        if (!g_.adjacent(w, e.v)) continue;
        Support s{w, static_cast<std::uint32_t>(*g_.edge_index(e.u, w)),
                  static_cast<std::uint32_t>(*g_.edge_index(w, e.v))};
        supports_[i].push_back(s);
        dependents_[s.aw].push_back(static_cast<std::uint32_t>(i));
        dependents_[s.wb].push_back(static_cast<std::uint32_t>(i));
        apex_[w].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  std::optional<std::vector<EdgeState>> solve() {
    State s;
    s.edom.assign(g_.size(), kKept | kFwd | kRev);
    s.vdom = init_vdom_;
    if (s.vdom.empty()) s.vdom.assign(g_.order(), kAnyStatus);
    // An endpoint of an edge in no triangle is never the centre of a 2-dipath.
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (supports_[i].empty()) {
        s.vdom[g_.edges()[i].u] &= static_cast<std::uint8_t>(~kInt);
        s.vdom[g_.edges()[i].v] &= static_cast<std::uint8_t>(~kInt);
      }
    }
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (g_.degree(v) > 0 && (s.vdom[v] & (kSrc | kSnk | kInt)) == 0) return std::nullopt;
      vqueue_.push_back(v);
    }
    for (std::size_t i = 0; i < g_.size(); ++i) equeue_.push_back(static_cast<std::uint32_t>(i));
    if (!search(s)) return std::nullopt;
    return result_;
  }

 private:
  struct Conflict {
    std::uint32_t edge;
    Vertex centre;
  };
  struct Support {
    Vertex w;
    std::uint32_t aw;
    std::uint32_t wb;
  };
  struct State {
    std::vector<std::uint8_t> edom;
    std::vector<std::uint8_t> vdom;
  };

  std::uint8_t out_bit(std::uint32_t e, Vertex x) const { return g_.edges()[e].u == x ? kFwd : kRev; }
  std::uint8_t in_bit(std::uint32_t e, Vertex x) const { return g_.edges()[e].u == x ? kRev : kFwd; }

  bool restrict_edge(State& s, std::uint32_t e, std::uint8_t mask) {
    const std::uint8_t nd = s.edom[e] & mask;
    if (nd == s.edom[e]) return true;
    if (nd == 0) return false;
    s.edom[e] = nd;
    equeue_.push_back(e);
    return true;
  }

  bool restrict_vertex(State& s, Vertex v, std::uint8_t mask) {
    const std::uint8_t nd = s.vdom[v] & mask;
    if (nd == s.vdom[v]) return true;
    if (nd == 0) return false;
    s.vdom[v] = nd;
    vqueue_.push_back(v);
    return true;
  }

  // Keeps the kept value of edge k only while some 2-dipath can still join
  // its ends; a forced kept edge with a single possible 2-dipath fixes it.
  bool check_support(State& s, std::uint32_t k) {
    if (!(s.edom[k] & kKept)) return true;
    const Edge& e = g_.edges()[k];
    int count = 0;
    const Support* only = nullptr;
    bool only_ab = false;
    for (const Support& sp : supports_[k]) {
      if (!(s.vdom[sp.w] & kInt)) continue;
      const bool ab = (s.edom[sp.aw] & out_bit(sp.aw, e.u)) && (s.edom[sp.wb] & out_bit(sp.wb, sp.w)) &&
                      (s.vdom[e.u] & (kSrc | kInt)) && (s.vdom[e.v] & (kSnk | kInt));
      const bool ba = (s.edom[sp.wb] & out_bit(sp.wb, e.v)) && (s.edom[sp.aw] & out_bit(sp.aw, sp.w)) &&
                      (s.vdom[e.v] & (kSrc | kInt)) && (s.vdom[e.u] & (kSnk | kInt));
      count += int(ab) + int(ba);
      if (ab || ba) {
        only = &sp;
        only_ab = ab;
      }
      if (count > 1) return true;
    }
    if (count == 0) return restrict_edge(s, k, static_cast<std::uint8_t>(~kKept));
    if (s.edom[k] == kKept && only != nullptr) {
      if (only_ab) {
        return restrict_edge(s, only->aw, out_bit(only->aw, e.u)) &&
               restrict_edge(s, only->wb, out_bit(only->wb, only->w));
      }
      return restrict_edge(s, only->wb, out_bit(only->wb, e.v)) &&
             restrict_edge(s, only->aw, out_bit(only->aw, only->w));
    }
    return true;
  }

  bool process_edge(State& s, std::uint32_t i) {
    const std::uint8_t d = s.edom[i];
    const Edge& e = g_.edges()[i];
    for (Vertex x : {e.u, e.v}) {
      const std::uint8_t out = out_bit(i, x);
      const std::uint8_t in = in_bit(i, x);
      if (d == out || d == in) {
        if (!restrict_vertex(s, x, d == out ? static_cast<std::uint8_t>(~kSnk) : static_cast<std::uint8_t>(~kSrc))) {
          return false;
        }
        for (const Conflict& c : conflicts_[i]) {
          if (c.centre != x) continue;
          // Arcs at a centre towards non-adjacent ends must agree in direction.
          const std::uint8_t banned = d == in ? out_bit(c.edge, x) : in_bit(c.edge, x);
          if (!restrict_edge(s, c.edge, static_cast<std::uint8_t>(~banned))) return false;
        }
      }
    }
    if (!check_support(s, i)) return false;
    for (std::uint32_t k : dependents_[i]) {
      if (!check_support(s, k)) return false;
    }
    return true;
  }

  bool process_vertex(State& s, Vertex v) {
    const std::uint8_t d = s.vdom[v];
    if (d == kSrc || d == kSnk) {
      for (std::uint32_t e : incident_[v]) {
        const std::uint8_t banned = d == kSrc ? in_bit(e, v) : out_bit(e, v);
        if (!restrict_edge(s, e, static_cast<std::uint8_t>(~banned))) return false;
      }
    }
    if (!(d & kInt)) {
      for (std::uint32_t k : apex_[v]) {
        if (!check_support(s, k)) return false;
      }
    }
    return true;
  }

  bool propagate(State& s) {
    bool ok = true;
    while (ok && (!equeue_.empty() || !vqueue_.empty())) {
      if (!vqueue_.empty()) {
        Vertex v = vqueue_.back();
        vqueue_.pop_back();
        ok = process_vertex(s, v);
      } else {
        std::uint32_t e = equeue_.back();
        equeue_.pop_back();
        ok = process_edge(s, e);
      }
    }
    equeue_.clear();
    vqueue_.clear();
    return ok;
  }

  bool search(State& s) {
    if (!propagate(s)) return false;
    std::size_t best = g_.size();
    int best_size = 4;
    for (std::size_t i = 0; i < g_.size(); ++i) {
      const int sz = std::popcount(static_cast<unsigned>(s.edom[i]));
      if (sz > 1 && sz < best_size) {
        best_size = sz;
        best = i;
        if (sz == 2) break;
      }
    }
    if (best == g_.size()) return accept(s);
    for (std::uint8_t bit : {kFwd, kRev, kKept}) {
      if (!(s.edom[best] & bit)) continue;
      counter_.tick();
      State child = s;
      child.edom[best] = bit;
      equeue_.push_back(static_cast<std::uint32_t>(best));
      if (search(child)) return true;
    }
    return false;
  }

  bool accept(const State& s) {
    std::vector<EdgeState> states(g_.size());
    for (std::size_t i = 0; i < g_.size(); ++i) {
      states[i] = s.edom[i] == kKept ? EdgeState::Kept : s.edom[i] == kFwd ? EdgeState::Forward : EdgeState::Reverse;
    }
    const MixedGraph h = orient(g_, states);
    if (!is_qt(h)) return false;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (!(s.vdom[v] & status_bit(vertex_status(h, v)))) return false;
    }
    result_ = std::move(states);
    return true;
  }

  static std::uint8_t status_bit(VertexStatus st) {
    switch (st) {
      case VertexStatus::Source: return kSrc;
      case VertexStatus::Sink: return kSnk;
      case VertexStatus::Internal: return kInt;
      case VertexStatus::ArcFree: return kAnyStatus;  // isolated vertices only
    }
    return kAnyStatus;
  }

  const Graph& g_;
  NodeCounter& counter_;
  std::vector<std::uint8_t> init_vdom_;
  std::vector<std::vector<Conflict>> conflicts_;
  std::vector<std::vector<Support>> supports_;
  std::vector<std::vector<std::uint32_t>> dependents_;
  std::vector<std::vector<std::uint32_t>> apex_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<std::uint32_t> equeue_;
  std::vector<Vertex> vqueue_;
  std::vector<EdgeState> result_;
};

/// Balanced independent cut of size <= 3 with both sides of at least two
/// vertices, in local ids of `g` (assumed connected).
inline std::optional<VertexCut> find_balanced_cut(const Graph& g) {
  const std::size_t n = g.order();
  std::optional<VertexCut> best;
  std::size_t best_score = 1;  // smaller side must exceed this

  auto consider = [&](const std::vector<Vertex>& sep) {
    std::vector<char> blocked(n, 0);
    for (Vertex v : sep) blocked[v] = 1;
    auto label = component_labels(g, blocked);
    int comps = 0;
    for (int l : label) comps = std::max(comps, l + 1);
    if (comps < 2 || comps > 12) return;
    std::vector<std::size_t> csize(comps, 0);
    for (int l : label) {
      if (l >= 0) ++csize[l];
    }
    std::vector<std::uint32_t> touch(sep.size(), 0);
    for (std::size_t i = 0; i < sep.size(); ++i) {
      for (Vertex y : g.neighbors(sep[i])) {
        if (label[y] >= 0) touch[i] |= 1u << label[y];
      }
    }
    const std::uint32_t all = (1u << comps) - 1;
    for (std::uint32_t mask = 1; mask < all; mask += 2) {
      bool ok = true;
      for (std::uint32_t t : touch) ok = ok && (t & mask) && (t & ~mask & all);
      if (!ok) continue;
      std::size_t s1 = 0;
      for (int c = 0; c < comps; ++c) {
        if ((mask >> c) & 1u) s1 += csize[c];
      }
      const std::size_t score = std::min(s1, n - sep.size() - s1);
      if (score <= best_score) continue;
      best_score = score;
      VertexCut cut;
      cut.separator = sep;
      for (Vertex v = 0; v < n; ++v) {
        if (label[v] < 0) continue;
        ((mask >> label[v]) & 1u ? cut.side1 : cut.side2).push_back(v);
      }
      best = std::move(cut);
    }
  };

  for (Vertex a : cut_vertices(g)) consider({a});
  if (best) return best;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) consider({a, b});
    }
  }
  if (best || n > 60) return best;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      for (Vertex c = b + 1; c < n; ++c) {
        if (!g.adjacent(a, c) && !g.adjacent(b, c)) consider({a, b, c});
      }
    }
  }
  return best;
}

/// Solves a connected graph by recursive splitting along independent cuts.
/// A side receives the cut vertices with a fixed source/sink status; the
/// union of compatible side solutions solves the whole graph.
class Decomposer {
 public:
  using Assignment = std::vector<std::pair<Edge, EdgeState>>;

  Decomposer(const Graph& g, NodeCounter& counter, SolveStats& stats, bool decompose)
      : g_(g), counter_(counter), stats_(stats), decompose_(decompose) {}

  std::optional<Assignment> solve(std::vector<Vertex> vertices, std::vector<std::uint8_t> vdom) {
    Key key{vertices, vdom};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    auto result = solve_uncached(vertices, vdom);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  using Key = std::pair<std::vector<Vertex>, std::vector<std::uint8_t>>;
  static constexpr std::size_t kFlatLimit = 12;

  std::optional<Assignment> flat(const Subgraph& sub, std::vector<std::uint8_t> vdom) {
    FlatSearch search(sub.graph, std::move(vdom), counter_);
    auto states = search.solve();
    if (!states) return std::nullopt;
    Assignment out;
    for (std::size_t i = 0; i < states->size(); ++i) {
      const Edge& e = sub.graph.edges()[i];
      out.push_back({Edge(sub.original[e.u], sub.original[e.v]), (*states)[i]});
    }
    return out;
  }

  std::optional<Assignment> solve_uncached(const std::vector<Vertex>& vertices,
                                           const std::vector<std::uint8_t>& vdom) {
    Subgraph sub = induced_subgraph(g_, vertices);
    auto comps = connected_components(sub.graph);
    if (comps.size() > 1) {
      Assignment all;
      for (const auto& comp : comps) {
        std::vector<Vertex> vs;
        std::vector<std::uint8_t> ds;
        for (Vertex local : comp) {
          vs.push_back(sub.original[local]);
          ds.push_back(vdom[local]);
        }
        auto part = solve(std::move(vs), std::move(ds));
        if (!part) return std::nullopt;
        all.insert(all.end(), part->begin(), part->end());
      }
      return all;
    }
    if (!decompose_ || sub.graph.order() <= kFlatLimit) return flat(sub, vdom);

    auto cut_it = cuts_.find(vertices);
    if (cut_it == cuts_.end()) cut_it = cuts_.emplace(vertices, find_balanced_cut(sub.graph)).first;
    if (!cut_it->second) return flat(sub, vdom);
    const VertexCut& cut = *cut_it->second;
    ++stats_.decompositions;

    const std::size_t k = cut.separator.size();
    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
      std::vector<std::uint8_t> fixed(k);
      bool allowed = true;
      for (std::size_t j = 0; j < k; ++j) {
        fixed[j] = ((bits >> j) & 1u) ? kSnk : kSrc;
        allowed = allowed && (vdom[cut.separator[j]] & fixed[j]);
      }
      if (!allowed) continue;
      auto side = [&](const std::vector<Vertex>& part) {
        std::vector<std::pair<Vertex, std::uint8_t>> members;
        for (Vertex local : part) members.push_back({sub.original[local], vdom[local]});
        for (std::size_t j = 0; j < k; ++j) members.push_back({sub.original[cut.separator[j]], fixed[j]});
        std::sort(members.begin(), members.end());
        std::vector<Vertex> vs;
        std::vector<std::uint8_t> ds;
        for (auto [v, d] : members) {
          vs.push_back(v);
          ds.push_back(d);
        }
        return solve(std::move(vs), std::move(ds));
      };
      auto left = side(cut.side1);
      if (!left) continue;
      auto right = side(cut.side2);
      if (!right) continue;
      left->insert(left->end(), right->begin(), right->end());
      return left;
    }
    return std::nullopt;
  }

  const Graph& g_;
  NodeCounter& counter_;
  SolveStats& stats_;
  bool decompose_;
  std::map<Key, std::optional<Assignment>> memo_;
  std::map<std::vector<Vertex>, std::optional<VertexCut>> cuts_;
};

struct ComponentResult {
  Outcome outcome = Outcome::No;
  Decomposer::Assignment assignment;
  SolveStats stats;
};

inline ComponentResult solve_component(const Graph& g, const std::vector<Vertex>& comp,
                                       const std::vector<std::uint8_t>& vdom, const SolveOptions& opts) {
  ComponentResult r;
  NodeCounter counter(opts.node_limit);
  try {
    Decomposer d(g, counter, r.stats, opts.decompose);
    std::vector<std::uint8_t> ds;
    for (Vertex v : comp) ds.push_back(vdom[v]);
    auto a = d.solve(comp, std::move(ds));
    r.outcome = a ? Outcome::Yes : Outcome::No;
    if (a) r.assignment = std::move(*a);
  } catch (const BudgetExhausted&) {
    r.outcome = Outcome::BudgetExceeded;
  }
  r.stats.nodes = counter.count();
  return r;
}

}  // namespace detail

/// Decides whether g admits a quasi-transitive partial orientation in which
/// every vertex meets its status constraint (empty = unconstrained), and
/// produces one when it does.
inline SolveResult decide_qt_constrained(const Graph& g, const std::vector<StatusConstraint>& constraints,
                                         const SolveOptions& opts = {}) {
  if (!constraints.empty() && constraints.size() != g.order()) {
    throw std::invalid_argument("one status constraint per vertex required");
  }
  std::vector<std::uint8_t> vdom(g.order(), detail::kAnyStatus);
  for (std::size_t v = 0; v < constraints.size(); ++v) vdom[v] = detail::status_mask(constraints[v]);

  std::vector<std::vector<Vertex>> comps;
  for (auto& c : connected_components(g)) {
    if (c.size() > 1) comps.push_back(std::move(c));
  }
  std::vector<detail::ComponentResult> parts(comps.size());
  if (opts.threads > 1 && comps.size() > 1) {
    for (std::size_t start = 0; start < comps.size(); start += opts.threads) {
      std::vector<std::future<detail::ComponentResult>> jobs;
      const std::size_t stop = std::min(comps.size(), start + opts.threads);
      for (std::size_t i = start; i < stop; ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          return detail::solve_component(g, comps[i], vdom, opts);
        }));
      }
      for (std::size_t i = start; i < stop; ++i) parts[i] = jobs[i - start].get();
    }
  } else {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      parts[i] = detail::solve_component(g, comps[i], vdom, opts);
      if (parts[i].outcome != Outcome::Yes) {
        parts.resize(i + 1);
        break;
      }
    }
  }

  SolveResult result;
  result.outcome = Outcome::Yes;
  std::vector<EdgeState> states(g.size(), EdgeState::Kept);
  for (const auto& p : parts) {
    result.stats.nodes += p.stats.nodes;
    result.stats.decompositions += p.stats.decompositions;
    result.stats.memo_hits += p.stats.memo_hits;
    if (result.outcome == Outcome::Yes && p.outcome != Outcome::Yes) result.outcome = p.outcome;
    for (const auto& [e, s] : p.assignment) states[*g.edge_index(e.u, e.v)] = s;
  }
  if (result.outcome == Outcome::Yes) result.witness.emplace(g, orient(g, states));
  return result;
}

inline SolveResult decide_qt(const Graph& g, const SolveOptions& opts = {}) {
  return decide_qt_constrained(g, {}, opts);
}

}  // namespace oqt
