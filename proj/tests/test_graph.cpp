#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "gdtk/generators.hpp"
#include "gdtk/graph.hpp"
#include "gdtk/io.hpp"
#include "support/oracles.hpp"

using namespace gdtk;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) { return make_random_gnp(n, p, seed); }

}  // namespace

TEST_CASE("graph basics") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 1);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.max_degree() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 7), std::invalid_argument);
}

TEST_CASE("bfs layering on a path") {
  Graph g = make_path(5);
  auto layering = bfs_layering(g);
  REQUIRE(layering.layers.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(layering.layers[i] == std::vector<int>{i});
  CHECK(layering.root == 0);
  CHECK(layering.parent[0] == -1);
  CHECK(layering.parent[3] == 2);
}

TEST_CASE("bfs layering of a single vertex") {
  Graph g(1);
  auto layering = bfs_layering(g);
  CHECK(layering.layers == std::vector<std::vector<int>>{{0}});
  CHECK(layering.parent[0] == -1);
}

TEST_CASE("bfs layering rejects the empty graph") {
  CHECK_THROWS_WITH(bfs_layering(Graph(0)), "empty graph");
}

TEST_CASE("bfs layering of the 3x3 grid from a corner") {
  // expected layer sizes from brute-force shortest paths
  Graph g = make_grid(3, 3);
  auto dist = oracles::floyd_warshall(g);
  std::vector<int> expected_sizes(5, 0);
  for (int v = 0; v < 9; ++v) ++expected_sizes[dist[0][v]];
  CHECK(expected_sizes == std::vector<int>{1, 2, 3, 2, 1});

  auto layering = bfs_layering(g, 0);
  REQUIRE(layering.layers.size() == 5);
  for (int i = 0; i < 5; ++i)
    CHECK(layering.layers[i].size() == static_cast<std::size_t>(expected_sizes[i]));
}

TEST_CASE("bfs layers are exactly the distance classes") {
  // property check against all-pairs shortest paths
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = random_graph(30, 0.12, seed);
    auto dist = oracles::floyd_warshall(g);
    auto layering = bfs_layering(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (layering.layer_of[v] >= 0) {
        CHECK(layering.layer_of[v] == dist[layering.root][v]);
        if (v != layering.root) {
          int p = layering.parent[v];
          REQUIRE(p >= 0);
          CHECK(g.has_edge(p, v));
          CHECK(layering.layer_of[p] == layering.layer_of[v] - 1);
          for (int w : g.neighbors(v))
            if (layering.layer_of[w] == layering.layer_of[v] - 1) CHECK(p <= w);
        }
      } else {
        CHECK(dist[layering.root][v] == -1);
      }
    }
  }
}

TEST_CASE("weak diameter") {
  Graph g = make_cycle(6);
  CHECK(weak_diameter(g, {2}) == 0);
  CHECK(weak_diameter(g, {}) == 0);
  CHECK(weak_diameter(g, {0, 3}) == 3);  // antipodal on C_6, per the BFS oracle
  Graph path = make_path(7);
  std::vector<int> all(7);
  for (int v = 0; v < 7; ++v) all[v] = v;
  CHECK(weak_diameter(path, all) == 6);

  Graph two(2);  // disconnected pair
  CHECK(!weak_diameter(two, {0, 1}).has_value());
  CHECK(weak_diameter_exceeds(two, {0, 1}, 1000));
  CHECK(weak_diameter_exceeds(path, all, 5));
  CHECK(!weak_diameter_exceeds(path, all, 6));
}

TEST_CASE("weak diameter is measured in the ambient graph") {
  // two vertices adjacent through the hub are close even if far in g[s]
  Graph star = make_biclique(1, 4);
  CHECK(weak_diameter(star, {1, 2, 3, 4}) == 2);
}

TEST_CASE("contract partition") {
  Graph g = make_cycle(6);
  SECTION("singletons give the identity") {
    auto contracted = contract_partition(g, singleton_partition(6));
    CHECK(contracted == g);
  }
  SECTION("full contraction gives K_1") {
    VertexPartition p;
    p.parts = {{0, 1, 2, 3, 4, 5}};
    auto contracted = contract_partition(g, p);
    CHECK(contracted.vertex_count() == 1);
    CHECK(contracted.edge_count() == 0);
  }
  SECTION("pair contraction of C_6 gives C_3") {
    VertexPartition p;
    p.parts = {{0, 1}, {2, 3}, {4, 5}};
    auto contracted = contract_partition(g, p);
    CHECK(contracted == make_cycle(3));
  }
  SECTION("disconnected part is rejected") {
    VertexPartition p;
    p.parts = {{0, 3}, {1, 2}, {4, 5}};
    CHECK_THROWS_WITH(contract_partition(g, p), "part not connected");
  }
}

TEST_CASE("strong product") {
  SECTION("P_2 x P_2 is K_4") {
    Graph p2 = make_path(2);
    CHECK(strong_product(p2, p2) == make_clique(4));
  }
  SECTION("K_1 is an identity factor") {
    Graph h = make_grid(2, 3);
    CHECK(strong_product(make_clique(1), h) == h);
  }
  SECTION("P_3 x P_3 is the 3x3 king graph") {
    Graph king = strong_product(make_path(3), make_path(3));
    CHECK(king.vertex_count() == 9);
    CHECK(king.edge_count() == 20);  // clause-by-clause enumeration
    // independent enumeration of the three clauses
    Graph expected(9);
    auto id = [](int u, int v) { return u * 3 + v; };
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v)
        for (int u2 = 0; u2 < 3; ++u2)
          for (int v2 = 0; v2 < 3; ++v2) {
            if (id(u, v) >= id(u2, v2)) continue;
            bool eu = std::abs(u - u2) == 1, ev = std::abs(v - v2) == 1;
            bool su = u == u2, sv = v == v2;
            if ((su && ev) || (eu && sv) || (eu && ev)) expected.add_edge(id(u, v), id(u2, v2));
          }
    CHECK(king == expected);
  }
  SECTION("degree identity deg(u,v) = (deg(u)+1)(deg(v)+1) - 1") {
    Graph h1 = random_graph(6, 0.5, 11);
    Graph h2 = random_graph(5, 0.4, 12);
    Graph prod = strong_product(h1, h2);
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 5; ++v)
        CHECK(prod.degree(u * 5 + v) == (h1.degree(u) + 1) * (h2.degree(v) + 1) - 1);
  }
}

TEST_CASE("subdivide") {
  CHECK(oracles::canonical_form(subdivide(make_path(2), 1)) ==
        oracles::canonical_form(make_path(3)));
  SECTION("C_3 once-subdivided is C_6") {
    Graph c6 = subdivide(make_cycle(3), 1);
    CHECK(c6.vertex_count() == 6);
    CHECK(c6.edge_count() == 6);
    for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);
    CHECK(is_connected_subset(c6, {0, 1, 2, 3, 4, 5}));
  }
  SECTION("K_{2,2} once-subdivided is C_8") {
    Graph g = subdivide(make_biclique(2, 2), 1);
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == 8);
    for (int v = 0; v < 8; ++v) CHECK(g.degree(v) == 2);
    std::vector<int> all(8);
    for (int v = 0; v < 8; ++v) all[v] = v;
    CHECK(is_connected_subset(g, all));  // connected 2-regular on 8 vertices = C_8
  }
  SECTION("degrees survive, new vertices have degree 2") {
    Graph g = random_graph(8, 0.4, 3);
    Graph s = subdivide(g, 2);
    CHECK(s.vertex_count() == 8 + 2 * g.edge_count());
    for (int v = 0; v < 8; ++v) CHECK(s.degree(v) == g.degree(v));
    for (int v = 8; v < s.vertex_count(); ++v) CHECK(s.degree(v) == 2);
  }
}

TEST_CASE("generators") {
  SECTION("pohoata_davies counts") {
    Graph pd2 = make_pohoata_davies(2);
    CHECK(pd2.vertex_count() == 6);
    CHECK(pd2.edge_count() == 6);
    for (int n = 1; n <= 5; ++n) {
      Graph pd = make_pohoata_davies(n);
      CHECK(pd.vertex_count() == n * n + n);
      CHECK(pd.edge_count() == n * (n - 1) + n * n);
    }
  }
  SECTION("pohoata_davies(2) is a 6-cycle") {
    Graph pd2 = make_pohoata_davies(2);
    for (int v = 0; v < 6; ++v) CHECK(pd2.degree(v) == 2);
    CHECK(is_connected_subset(pd2, {0, 1, 2, 3, 4, 5}));
  }
  SECTION("degenerate grid is a path") { CHECK(make_grid(1, 7) == make_path(7)); }
  SECTION("biclique(2,2) is C_4") {
    Graph b = make_biclique(2, 2);
    CHECK(b.vertex_count() == 4);
    CHECK(b.edge_count() == 4);
    for (int v = 0; v < 4; ++v) CHECK(b.degree(v) == 2);
  }
  SECTION("wall is subcubic") {
    for (int n = 1; n <= 4; ++n) CHECK(make_wall(n).max_degree() <= 3);
  }
  SECTION("errors on nonpositive dimensions") {
    CHECK_THROWS_AS(make_grid(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_path(0), std::invalid_argument);
    CHECK_THROWS_AS(make_pohoata_davies(-1), std::invalid_argument);
  }
  SECTION("generation is referentially transparent") {
    CHECK(generate("random_gnp(20,0.3,5)") == generate("random_gnp(20,0.3,5)"));
    CHECK(generate("grid(3,4)") == make_grid(3, 4));
  }
}

TEST_CASE("family spec parsing") {
  auto spec = parse_family_spec("random_gnp(12,0.25,7)");
  CHECK(spec.family == "random_gnp");
  REQUIRE(spec.params.size() == 3);
  CHECK(spec.params[1] == 0.25);
  CHECK_THROWS_AS(parse_family_spec("grid(3,"), std::invalid_argument);
  CHECK_THROWS_AS(generate("nosuch(3)"), std::invalid_argument);
  CHECK_THROWS_AS(generate("grid(3)"), std::invalid_argument);
}

TEST_CASE("edge list io") {
  Graph g = make_pohoata_davies(3);
  auto text = graph_to_string(g);
  CHECK(graph_from_string(text) == g);

  CHECK_THROWS_AS(graph_from_string("2 1\n1 1\n"), std::runtime_error);     // self-loop
  CHECK_THROWS_AS(graph_from_string("2 1\n1 0\n"), std::runtime_error);     // u >= v
  CHECK_THROWS_AS(graph_from_string("2 2\n0 1\n0 1\n"), std::runtime_error);  // duplicate
  CHECK_THROWS_AS(graph_from_string("2 1\n0 5\n"), std::runtime_error);     // out of range
  CHECK_THROWS_AS(graph_from_string("2 2\n0 1\n"), std::runtime_error);     // count short
  CHECK_THROWS_AS(graph_from_string("2 0\n0 1\n"), std::runtime_error);     // trailing
  CHECK_THROWS_AS(graph_from_string(""), std::runtime_error);
}

TEST_CASE("induced subgraph relabeling") {
  Graph g = make_grid(3, 3);
  auto sub = induced_subgraph(g, {0, 1, 4, 8});
  CHECK(sub.graph.vertex_count() == 4);
  CHECK(sub.to_host == std::vector<int>{0, 1, 4, 8});
  CHECK(sub.from_host[4] == 2);
  CHECK(sub.graph.has_edge(0, 1));  // 0-1
  CHECK(sub.graph.has_edge(1, 2));  // 1-4
  CHECK(!sub.graph.has_edge(0, 3));
  CHECK(sub.graph.edge_count() == 2);
}

TEST_CASE("components") {
  Graph g(6);
  g.add_edge(0, 2);
  g.add_edge(2, 4);
  g.add_edge(1, 3);
  auto comps = connected_components(g);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 2, 4});
  CHECK(comps[1] == std::vector<int>{1, 3});
  CHECK(comps[2] == std::vector<int>{5});
}
