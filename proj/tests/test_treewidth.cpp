#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "gdtk/generators.hpp"
#include "gdtk/tree_partition.hpp"
#include "gdtk/treewidth.hpp"
#include "support/oracles.hpp"

using namespace gdtk;

namespace {

Graph random_tree(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(static_cast<int>(rng() % v), v);
  return g;
}

}  // namespace

TEST_CASE("exact treewidth on anchors") {
  CHECK(exact_treewidth(make_path(6)).width == 1);
  CHECK(exact_treewidth(random_tree(12, 5)).width == 1);
  for (int n = 2; n <= 7; ++n) CHECK(exact_treewidth(make_clique(n)).width == n - 1);
  CHECK(exact_treewidth(make_cycle(9)).width == 2);
  CHECK(exact_treewidth(Graph(3)).width == 0);
  CHECK(exact_treewidth(make_grid(3, 3)).width == 3);
  CHECK(exact_treewidth(make_grid(3, 3)).width == oracles::treewidth_dp(make_grid(3, 3)));
  CHECK_THROWS_WITH(exact_treewidth(make_grid(6, 6)), "too large for exact oracle");
}

TEST_CASE("exact treewidth agrees with the subset-dp oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    double p = 0.15 + 0.06 * static_cast<double>(seed);
    Graph g = make_random_gnp(11, p, seed);
    auto result = exact_treewidth(g);
    CHECK(result.width == oracles::treewidth_dp(g));
    CHECK(validate_tree_decomposition(g, result.decomposition).ok);
    CHECK(result.decomposition.width() == result.width);
  }
  Graph pd3 = make_pohoata_davies(3);
  auto result = exact_treewidth(pd3);
  CHECK(result.width == oracles::treewidth_dp(pd3));
}

TEST_CASE("heuristic upper bounds") {
  for (auto h : {TwHeuristic::min_fill, TwHeuristic::min_degree}) {
    CHECK(treewidth_upper(make_clique(6), h).width == 5);
    CHECK(treewidth_upper(make_path(9), h).width == 1);
  }
  auto grid44 = make_grid(4, 4);
  auto upper = treewidth_upper(grid44, TwHeuristic::min_fill);
  auto exact = exact_treewidth(grid44);
  CHECK(exact.width == 4);
  CHECK(upper.width >= exact.width);
  CHECK(validate_tree_decomposition(grid44, upper.decomposition).ok);
}

TEST_CASE("lower bounds") {
  CHECK(treewidth_lower(make_clique(5)) == 4);
  CHECK(treewidth_lower(random_tree(14, 9)) == 1);
  CHECK(treewidth_lower(make_grid(4, 4)) <= 4);
  CHECK(degeneracy(make_grid(4, 4)) == 2);
}

TEST_CASE("bounds sandwich the exact value") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = make_random_gnp(12, 0.3, 100 + seed);
    int exact = exact_treewidth(g).width;
    CHECK(treewidth_lower(g) <= exact);
    CHECK(exact <= treewidth_upper(g, TwHeuristic::min_fill).width);
    CHECK(exact <= treewidth_upper(g, TwHeuristic::min_degree).width);
  }
}

TEST_CASE("decomposition validator") {
  Graph g = make_grid(3, 3);
  SECTION("single bag is valid with width n-1") {
    TreeDecomposition td;
    td.tree = Graph(1);
    td.bags = {{0, 1, 2, 3, 4, 5, 6, 7, 8}};
    CHECK(validate_tree_decomposition(g, td).ok);
    CHECK(td.width() == 8);
  }
  SECTION("missing edge cover is reported") {
    TreeDecomposition td;
    td.tree = Graph(2);
    td.tree.add_edge(0, 1);
    td.bags = {{0, 1, 2, 3, 4, 5}, {4, 5, 6, 7, 8}};  // edge 3-6 uncovered
    auto report = validate_tree_decomposition(g, td);
    CHECK(!report.ok);
    CHECK(report.message.find("uncovered") != std::string::npos);
  }
  SECTION("disconnected holder set is reported") {
    TreeDecomposition td;
    td.tree = make_path(3);
    td.bags = {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {1, 2}, {0, 3, 4, 5, 6, 7, 8}};
    auto report = validate_tree_decomposition(g, td);
    CHECK(!report.ok);
    CHECK(report.message.find("not connected") != std::string::npos);
  }
  SECTION("oracle output validates") {
    CHECK(validate_tree_decomposition(g, exact_treewidth(g).decomposition).ok);
  }
}

TEST_CASE("contraction can only lower treewidth") {
  // quotient by connected parts never increases width, and loses at most a
  // factor of the largest part
  std::mt19937_64 rng(7);
  for (int round = 0; round < 12; ++round) {
    Graph g = make_random_gnp(10, 0.35, 400 + round);
    // random connected partition by growing parts from seeds
    std::vector<int> part_of(10, -1);
    int parts = 0;
    for (const auto& comp : connected_components(g)) {
      std::vector<int> frontier;
      for (int v : comp) {
        if (part_of[v] >= 0) continue;
        if (frontier.empty() || rng() % 3 == 0) {
          part_of[v] = parts++;
        } else {
          // join a random already-assigned neighbor's part if any
          std::vector<int> options;
          for (int w : g.neighbors(v))
            if (part_of[w] >= 0) options.push_back(part_of[w]);
          part_of[v] = options.empty() ? parts++ : options[rng() % options.size()];
        }
      }
    }
    VertexPartition p;
    p.parts.resize(parts);
    for (int v = 0; v < 10; ++v) p.parts[part_of[v]].push_back(v);
    p.parts.erase(std::remove_if(p.parts.begin(), p.parts.end(),
                                 [](const auto& part) { return part.empty(); }),
                  p.parts.end());
    bool connected_parts = true;
    std::size_t max_part = 0;
    for (const auto& part : p.parts) {
      connected_parts = connected_parts && is_connected_subset(g, part);
      max_part = std::max(max_part, part.size());
    }
    if (!connected_parts) continue;
    Graph q = contract_partition(g, p);
    int tw_g = exact_treewidth(g).width;
    int tw_q = exact_treewidth(q).width;
    CHECK(tw_q <= tw_g);
    CHECK(tw_q >= tw_g / static_cast<int>(max_part));
  }
}

TEST_CASE("pace round trip") {
  Graph g = make_grid(3, 4);
  auto td = exact_treewidth(g).decomposition;
  auto text = pace_to_string(td, g.vertex_count());
  CHECK(text.rfind("s td ", 0) == 0);
  std::istringstream in(text);
  auto back = read_pace(in);
  CHECK(back.bags == td.bags);
  CHECK(back.tree == td.tree);
}

TEST_CASE("tree partition construction") {
  SECTION("trees get singleton parts") {
    Graph g = random_tree(14, 3);
    auto tp = tree_partition(g, exact_treewidth(g).decomposition);
    CHECK(tp.width() == 1);
    CHECK(validate_tree_partition(g, tp).ok);
  }
  SECTION("cycles get width at most 2") {
    for (int n : {3, 4, 7, 10}) {
      Graph g = make_cycle(n);
      auto tp = tree_partition(g, exact_treewidth(g).decomposition);
      CHECK(tp.width() <= 2);
      CHECK(validate_tree_partition(g, tp).ok);
    }
  }
  SECTION("one-part partition of K_4 is valid with width 4") {
    Graph g = make_clique(4);
    TreePartition tp;
    tp.tree = Graph(1);
    tp.parts.parts = {{0, 1, 2, 3}};
    tp.root = 0;
    tp.depth = {0};
    CHECK(validate_tree_partition(g, tp).ok);
    CHECK(tp.width() == 4);
  }
  SECTION("every edge joins equal or adjacent parts, on random graphs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Graph g = make_random_gnp(18, 0.2, 700 + seed);
      auto tp = tree_partition(g, treewidth_upper(g, TwHeuristic::min_fill).decomposition);
      CHECK(validate_tree_partition(g, tp).ok);
      auto part_of = tp.parts.part_of(g.vertex_count());
      for (auto [u, v] : g.edges()) {
        int a = part_of[u], b = part_of[v];
        CHECK((a == b || tp.tree.has_edge(a, b)));
      }
    }
  }
  SECTION("invalid decomposition is rejected") {
    Graph g = make_cycle(5);
    TreeDecomposition bad;
    bad.tree = Graph(1);
    bad.bags = {{0, 1}};
    CHECK_THROWS_AS(tree_partition(g, bad), std::invalid_argument);
  }
  SECTION("validator catches bad depth maps") {
    Graph g = make_path(3);
    auto tp = tree_partition(g, exact_treewidth(g).decomposition);
    tp.depth[1] += 1;
    CHECK(!validate_tree_partition(g, tp).ok);
  }
}

TEST_CASE("pohoata davies treewidth grows") {
  // recorded oracle values; the family has unbounded treewidth
  CHECK(exact_treewidth(make_pohoata_davies(2)).width == 2);
  int t3 = exact_treewidth(make_pohoata_davies(3)).width;
  CHECK(t3 == 3);
  int t4 = exact_treewidth(make_pohoata_davies(4)).width;
  CHECK(t4 > t3);
}
