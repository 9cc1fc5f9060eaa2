#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "oqt/graph.hpp"
#include "support/corpus.hpp"

using namespace oqt;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(Vertex(i), Vertex((i + 1) % n));
  return Graph(n, e);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

// triangle 0 1 2 with pendants 3 (at 0), 4 (at 1), 5 (at 2)
Graph pi_graph() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}, {2, 5}}); }

MixedGraph directed_cycle(std::size_t n) {
  std::vector<Arc> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back({Vertex(i), Vertex((i + 1) % n)});
  return MixedGraph(n, {}, a);
}

}  // namespace

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(MixedGraph(3, {{0, 1}}, {{0, 1}}), GraphError);
  CHECK_THROWS_AS(MixedGraph(3, {}, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(MixedGraph(3, {}, {{2, 2}}), GraphError);

  const Graph g(4, {{2, 1}, {0, 3}, {0, 1}});
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  CHECK(g.edges().front() == Edge(0, 1));
  CHECK(g.edge_index(1, 2).has_value());
  CHECK_FALSE(g.edge_index(2, 3).has_value());
  CHECK(g.degree(0) == 2);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("underlying") {
  const MixedGraph m(3, {{1, 2}}, {{0, 1}});
  CHECK(underlying(m) == Graph(3, {{0, 1}, {1, 2}}));
  CHECK(underlying(directed_cycle(5)) == cycle(5));
  CHECK(underlying(MixedGraph(3)) == Graph(3));
}

TEST_CASE("mixed square") {
  SECTION("2-dipath gains its chord") {
    const MixedGraph m(3, {}, {{0, 1}, {1, 2}});
    const MixedGraph sq = mixed_square(m);
    CHECK(sq.has_edge(0, 2));
    CHECK(sq.arcs() == m.arcs());
    CHECK(underlying(sq) == complete(3));
  }
  SECTION("directed 5-cycle squares to K5") {
    CHECK(underlying(mixed_square(directed_cycle(5))) == complete(5));
  }
  SECTION("star with an internal centre") {
    // x=0 -> c=1, c -> y=2, c -> z=3
    const MixedGraph m(4, {}, {{0, 1}, {1, 2}, {1, 3}});
    const MixedGraph sq = mixed_square(m);
    CHECK(sq.has_edge(0, 2));
    CHECK(sq.has_edge(0, 3));
    CHECK_FALSE(sq.adjacent(2, 3));
    CHECK(underlying(sq).size() == 5);
  }
  SECTION("existing adjacency is left alone") {
    const MixedGraph m(3, {}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(mixed_square(m) == m);
  }
  SECTION("every added edge has a recorded witness") {
    corpus::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      const Graph g = corpus::random_graph(rng, 7, 0.4);
      std::vector<Arc> arcs;
      for (const Edge& e : g.edges()) arcs.push_back(rng() % 2 ? Arc{e.u, e.v} : Arc{e.v, e.u});
      const MixedGraph m(7, {}, arcs);
      for (const SquareEdge& s : square_edges(m)) {
        const bool fwd = m.has_arc(s.edge.u, s.via) && m.has_arc(s.via, s.edge.v);
        const bool back = m.has_arc(s.edge.v, s.via) && m.has_arc(s.via, s.edge.u);
        CHECK((fwd || back));
        CHECK_FALSE(m.adjacent(s.edge.u, s.edge.v));
      }
      CHECK(mixed_square(m).edges().size() == square_edges(m).size());
    }
  }
}

TEST_CASE("undirected square") {
  // 0 -> 1 -> 2 -> 3: K4 minus 03
  const Graph sq = undirected_square(MixedGraph(4, {}, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(sq.size() == 5);
  CHECK_FALSE(sq.adjacent(0, 3));
  // the internal star above gives the same graph up to isomorphism
  const Graph star = undirected_square(MixedGraph(4, {}, {{0, 1}, {1, 2}, {1, 3}}));
  CHECK(corpus::canonical(corpus::dense(sq)) == corpus::canonical(corpus::dense(star)));

  const MixedGraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {});
  CHECK(undirected_square(c4) == cycle(4));
  CHECK(undirected_square(directed_cycle(5)) == complete(5));
}

TEST_CASE("triangle-free edges") {
  CHECK(triangle_free_edges(cycle(5)).size() == 5);
  CHECK(triangle_free_edges(complete(3)).empty());
  const EdgeSet pend = triangle_free_edges(pi_graph());
  CHECK(pend.edges() == std::vector<Edge>{{0, 3}, {1, 4}, {2, 5}});

  corpus::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const Graph g = corpus::random_graph(rng, 8, 0.45);
    const Graph h = edge_subgraph(g, triangle_free_edges(g)).graph;
    for (const Edge& e : h.edges()) CHECK_FALSE(in_triangle(h, e));
  }
}

TEST_CASE("edge subgraph") {
  const Subgraph s = edge_subgraph(complete(4), EdgeSet(complete(4), {{0, 1}, {2, 3}}));
  CHECK(s.graph.order() == 4);
  CHECK(s.graph.size() == 2);
  CHECK(edge_subgraph(cycle(5), EdgeSet(cycle(5), {})).graph.order() == 0);
  const Graph p = pi_graph();
  const Subgraph m = edge_subgraph(p, triangle_free_edges(p));
  CHECK(m.graph.order() == 6);
  CHECK(m.graph.size() == 3);
  CHECK(m.graph.max_degree() == 1);
  CHECK_THROWS_AS(EdgeSet(cycle(5), {{0, 2}}), GraphError);
}

TEST_CASE("odd cycles and two-colourings") {
  const auto cert = odd_cycle(cycle(5));
  REQUIRE(cert);
  CHECK(cert->size() % 2 == 1);
  for (std::size_t i = 0; i < cert->size(); ++i) {
    CHECK(cycle(5).adjacent((*cert)[i], (*cert)[(i + 1) % cert->size()]));
  }
  CHECK_FALSE(has_odd_cycle(cycle(6)));
  CHECK_FALSE(has_odd_cycle(Graph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}})));

  corpus::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Graph g = corpus::random_graph(rng, 9, 0.25);
    const auto col = two_coloring(g);
    const auto odd = odd_cycle(g);
    CHECK(col.has_value() != odd.has_value());
    CHECK(col.has_value() == corpus::oracle_bipartite(g));
    if (col) {
      for (const Edge& e : g.edges()) CHECK((*col)[e.u] != (*col)[e.v]);
    } else {
      const auto& c = *odd;
      CHECK(c.size() % 2 == 1);
      CHECK(std::set<Vertex>(c.begin(), c.end()).size() == c.size());
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(g.adjacent(c[i], c[(i + 1) % c.size()]));
    }
  }
}

TEST_CASE("girth") {
  CHECK(girth(cycle(5)) == 5u);
  CHECK(girth(complete(4)) == 3u);
  CHECK_FALSE(girth(Graph(4, {{0, 1}, {1, 2}, {2, 3}})).has_value());
  // Petersen
  const Graph pet(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                       {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  CHECK(girth(pet) == 5u);
}

TEST_CASE("cut vertices") {
  CHECK(cut_vertices(Graph(3, {{0, 1}, {1, 2}})) == std::vector<Vertex>{1});
  CHECK(cut_vertices(cycle(5)).empty());
  CHECK(cut_vertices(pi_graph()) == std::vector<Vertex>{0, 1, 2});

  // against deletion on random graphs
  corpus::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Graph g = corpus::random_graph(rng, 8, 0.3);
    const std::size_t base = connected_components(g).size();
    std::vector<Vertex> expect;
    for (Vertex v = 0; v < g.order(); ++v) {
      const Vertex del[] = {v};
      if (connected_components(delete_vertices(g, del).graph).size() > base) expect.push_back(v);
    }
    CHECK(cut_vertices(g) == expect);
  }
}

TEST_CASE("independent vertex cuts") {
  SECTION("pendant of Pi") {
    const auto cuts = independent_vertex_cuts(pi_graph());
    const bool found = std::any_of(cuts.begin(), cuts.end(), [](const VertexCut& c) {
      return c.separator == std::vector<Vertex>{0} &&
             (c.side1 == std::vector<Vertex>{3} || c.side2 == std::vector<Vertex>{3});
    });
    CHECK(found);
  }
  SECTION("complete graph has none") { CHECK(independent_vertex_cuts(complete(4)).empty()); }
  SECTION("gadget cut separating its leaves") {
    const Graph s(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 7}, {3, 7}, {6, 7}, {1, 6}, {4, 6}, {2, 6}, {3, 6}, {7, 8}});
    const auto cuts = independent_vertex_cuts(s);
    const bool found = std::any_of(cuts.begin(), cuts.end(), [](const VertexCut& c) {
      return c.separator == std::vector<Vertex>{1, 4, 7} && c.side1 == std::vector<Vertex>{0, 5, 8} &&
             c.side2 == std::vector<Vertex>{2, 3, 6};
    });
    CHECK(found);
    for (const auto& c : cuts) CHECK(is_independent_cut(s, c));
  }
  SECTION("every reported cut satisfies the definition") {
    for (const Graph& g : corpus::connected_graphs_upto(6)) {
      for (const auto& c : independent_vertex_cuts(g)) {
        CHECK(c.separator.size() <= 3);
        CHECK(is_independent_cut(g, c));
      }
    }
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(independent_vertex_cuts(Graph(2)), std::invalid_argument);
    CHECK_THROWS_AS(independent_vertex_cuts(cycle(4), 0), std::invalid_argument);
  }
}

TEST_CASE("induced subgraphs keep original ids") {
  const Subgraph s = induced_subgraph(cycle(6), {4, 0, 5});
  CHECK(s.original == std::vector<Vertex>{0, 4, 5});
  CHECK(s.graph.size() == 2);
  CHECK(is_connected(cycle(6)));
  CHECK_FALSE(is_connected(Graph(2)));
}
