#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "disttv/geodesics.hpp"
#include "disttv/graph.hpp"
#include "disttv/sampling.hpp"
#include "disttv/subtrees.hpp"
#include "disttv/tree_count.hpp"
#include "support/brute_force.hpp"

using namespace disttv;

// =============================================================================
// Parsing and validation
// =============================================================================

TEST_CASE("parse_graph accepts the canonical examples") {
  const Graph p3 = parse_graph("3 2\n0 1\n1 2\n");
  CHECK(p3.node_count() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.edge(0) == Edge{0, 1});
  CHECK(p3.edge(1) == Edge{1, 2});

  const Graph c3 = parse_graph("3 3\n0 1\n1 2\n0 2\n");
  CHECK(c3.edge_count() == 3);
  // canonical order: (0,1), (0,2), (1,2)
  CHECK(c3.edge(0) == Edge{0, 1});
  CHECK(c3.edge(1) == Edge{0, 2});
  CHECK(c3.edge(2) == Edge{1, 2});
}

TEST_CASE("parse_graph rejects malformed input") {
  CHECK_THROWS_AS(parse_graph("2 1\n0 0\n"), ParseError);        // self-loop
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 0\n"), ParseError);   // duplicate
  CHECK_THROWS_AS(parse_graph("4 2\n0 1\n2 3\n"), ParseError);   // disconnected
  CHECK_THROWS_AS(parse_graph("1 0\n"), ParseError);             // n < 2
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n"), ParseError);        // missing edge line
  CHECK_THROWS_AS(parse_graph("3 1\n0 1\n1 2\n"), ParseError);   // extra edge line
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\nx 2\n"), ParseError);   // bad token
  CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 7\n"), ParseError);   // out of range
  CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("parse_graph handles comments, blank lines, reordered edges") {
  const Graph g = parse_graph("# a triangle\n3 3\n\n1 2   # last edge first\n0 2\n0 1\n");
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 2});
  CHECK(g.edge(2) == Edge{1, 2});
}

TEST_CASE("format_graph round-trips canonically") {
  const Graph g = parse_graph("4 4\n2 3\n0 1\n1 2\n0 3\n");
  const std::string canonical = format_graph(g);
  CHECK(canonical == "4 4\n0 1\n0 3\n1 2\n2 3\n");
  CHECK(format_graph(parse_graph(canonical)) == canonical);
}

TEST_CASE("edge lookup") {
  const Graph g = cycle_graph(4);
  CHECK(g.find_edge(3, 0) == g.find_edge(0, 3));
  CHECK(g.find_edge(0, 2) == -1);
  CHECK_THROWS_AS(g.edge_index(0, 2), std::out_of_range);
}

TEST_CASE("remove_edge keeps connectivity or throws") {
  const Graph c4 = cycle_graph(4);
  const Graph broken = remove_edge(c4, 0);
  CHECK(broken.edge_count() == 3);
  CHECK(broken.is_tree());
  const Graph p3 = path_graph(3);
  CHECK_THROWS_AS(remove_edge(p3, 0), std::invalid_argument);  // bridge
}

// =============================================================================
// Subtree enumeration vs the 2^m subset scan
// =============================================================================

TEST_CASE("enumerate_subtrees on P3 and C3") {
  const auto p3 = enumerate_subtrees(path_graph(3));
  CHECK(p3.size() == 3);  // {e01}, {e12}, {e01,e12}

  const auto c3 = enumerate_subtrees(cycle_graph(3));
  CHECK(c3.size() == 6);  // 3 single edges + 3 two-edge paths

  // K4: 6 single edges + 12 two-edge paths + 16 spanning trees
  CHECK(enumerate_subtrees(complete_graph(4)).size() == 34);
}

TEST_CASE("enumerate_subtrees matches the subset-scan oracle") {
  std::mt19937_64 rng(11);
  std::vector<Graph> graphs{path_graph(4), cycle_graph(4), cycle_graph(5), complete_graph(4),
                            complete_graph(5), random_connected_graph(6, 0.5, rng),
                            random_connected_graph(6, 0.7, rng)};
  for (const Graph& g : graphs) {
    const auto ours = enumerate_subtrees(g);
    const auto expected = testing::scan_subtrees(g);
    REQUIRE(ours.size() == expected.size());
    std::set<std::vector<int>> ours_set, expected_set;
    for (const auto& s : ours) ours_set.insert(s.indices);
    for (const auto& s : expected) expected_set.insert(s);
    CHECK(ours_set == expected_set);
  }
}

TEST_CASE("every enumerated subset is connected and acyclic by independent DFS") {
  std::mt19937_64 rng(13);
  const Graph g = random_connected_graph(6, 0.6, rng);
  for (const auto& s : enumerate_subtrees(g)) CHECK(testing::dfs_is_subtree(g, s.indices));
}

TEST_CASE("enumeration limit aborts cleanly") {
  CHECK_THROWS_AS(enumerate_subtrees(complete_graph(5), 10), LimitError);
  CHECK_THROWS_AS(enumerate_spanning_trees(complete_graph(5), 10), LimitError);
}

TEST_CASE("enumerate_spanning_trees") {
  const auto p3 = enumerate_spanning_trees(path_graph(3));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].indices == std::vector<int>{0, 1});

  CHECK(enumerate_spanning_trees(cycle_graph(3)).size() == 3);
  CHECK(enumerate_spanning_trees(complete_graph(4)).size() == 16);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 5; ++i) {
    const Graph g = random_connected_graph(6, 0.5, rng);
    const auto ours = enumerate_spanning_trees(g);
    const auto expected = testing::scan_spanning_trees(g);
    CHECK(ours.size() == expected.size());
  }
}

// =============================================================================
// Matrix-tree counting
// =============================================================================

TEST_CASE("count_spanning_trees on known graphs") {
  CHECK(count_spanning_trees(path_graph(3)) == 1);
  CHECK(count_spanning_trees(cycle_graph(3)) == 3);
  CHECK(count_spanning_trees(complete_graph(4)) == 16);
  CHECK(count_spanning_trees(complete_graph(5)) == 125);   // Cayley n^{n-2}
  CHECK(count_spanning_trees(complete_graph(6)) == 1296);
  CHECK(count_spanning_trees(complete_graph(10)) == 100000000);
}

TEST_CASE("spanning enumeration matches the determinant count up to n = 7") {
  const Graph k7 = complete_graph(7);
  CHECK(count_spanning_trees(k7) == 16807);  // 7^5
  CHECK(enumerate_spanning_trees(k7, 100'000).size() == 16807);
}

TEST_CASE("count matches enumeration on assorted small graphs") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 8; ++i) {
    const Graph g = random_connected_graph(3 + static_cast<int>(i % 5), 0.6, rng);
    CHECK(count_spanning_trees(g) == enumerate_spanning_trees(g).size());
  }
}

TEST_CASE("count_spanning_trees_with_edge") {
  CHECK(count_spanning_trees_with_edge(path_graph(3), 0) == 1);  // bridge
  for (int e = 0; e < 3; ++e) CHECK(count_spanning_trees_with_edge(cycle_graph(3), e) == 2);
  for (int e = 0; e < 6; ++e) CHECK(count_spanning_trees_with_edge(complete_graph(4), e) == 8);
}

TEST_CASE("with-edge counts match filtered enumeration") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) {
    const Graph g = random_connected_graph(6, 0.55, rng);
    const auto trees = enumerate_spanning_trees(g);
    for (int e = 0; e < g.edge_count(); ++e) {
      std::uint64_t containing = 0;
      for (const auto& t : trees)
        if (t.contains(e)) ++containing;
      CHECK(count_spanning_trees_with_edge(g, e) == containing);
    }
  }
}

TEST_CASE("deletion-contraction identity") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 6; ++i) {
    const Graph g = random_connected_graph(6, 0.6, rng);
    const std::uint64_t total = count_spanning_trees(g);
    for (int e = 0; e < g.edge_count(); ++e) {
      const std::uint64_t with_e = count_spanning_trees_with_edge(g, e);
      try {
        const Graph without = remove_edge(g, e);
        CHECK(total == count_spanning_trees(without) + with_e);
      } catch (const std::invalid_argument&) {
        CHECK(with_e == total);  // bridges lie in every spanning tree
      }
    }
  }
}

TEST_CASE("node cap raises LimitError") {
  CHECK_THROWS_AS(count_spanning_trees(path_graph(65)), LimitError);
}

// =============================================================================
// Geodesic counts
// =============================================================================

TEST_CASE("geodesic_counts on C3: each pair's unique geodesic is its edge") {
  const Graph g = cycle_graph(3);
  const GeodesicCounts gc = geodesic_counts(g);
  CHECK(gc.pair_count == 3);
  for (int s = 0; s < 3; ++s) {
    for (int t = s + 1; t < 3; ++t) {
      const int p = GeodesicCounts::pair_index(3, s, t);
      CHECK(gc.sigma[p] == 1);
      for (int e = 0; e < 3; ++e)
        CHECK(gc.sigma_edge(p, e) == (g.edge(e) == Edge{s, t} ? 1 : 0));
    }
  }
}

TEST_CASE("geodesic_counts on P3: the end pair crosses both edges") {
  const GeodesicCounts gc = geodesic_counts(path_graph(3));
  const int p = GeodesicCounts::pair_index(3, 0, 2);
  CHECK(gc.sigma[p] == 1);
  CHECK(gc.sigma_edge(p, 0) == 1);
  CHECK(gc.sigma_edge(p, 1) == 1);
}

TEST_CASE("geodesic_counts on C4: opposite pairs have two geodesics") {
  const Graph g = cycle_graph(4);
  const GeodesicCounts gc = geodesic_counts(g);
  const int p = GeodesicCounts::pair_index(4, 0, 2);
  CHECK(gc.sigma[p] == 2);
  for (int e = 0; e < 4; ++e) CHECK(gc.sigma_edge(p, e) == 1);  // each side path once
}

TEST_CASE("sigma decomposes over BFS predecessors") {
  std::mt19937_64 rng(31);
  const Graph g = random_connected_graph(7, 0.4, rng);
  const GeodesicCounts gc = geodesic_counts(g);
  for (int s = 0; s < g.node_count(); ++s) {
    for (int t = 0; t < g.node_count(); ++t) {
      if (t == s) continue;
      std::int64_t sum = 0;
      for (const int prev : g.neighbors(t))
        if (gc.dist(s, prev) + 1 == gc.dist(s, t)) sum += gc.sigma_all(s, prev);
      CHECK(gc.sigma_all(s, t) == sum);
    }
  }
}

TEST_CASE("enumerate_geodesics matches the exhaustive path scan") {
  std::mt19937_64 rng(37);
  const Graph g = random_connected_graph(6, 0.5, rng);
  for (int s = 0; s < g.node_count(); ++s) {
    for (int t = s + 1; t < g.node_count(); ++t) {
      const auto ours = enumerate_geodesics(g, s, t);
      auto expected = testing::all_geodesics(g, s, t);
      CHECK(ours.size() == expected.size());
      const GeodesicCounts gc = geodesic_counts(g);
      CHECK(static_cast<std::int64_t>(ours.size()) ==
            gc.sigma[GeodesicCounts::pair_index(g.node_count(), s, t)]);
    }
  }
}

// =============================================================================
// Subtree views
// =============================================================================

TEST_CASE("is_subtree and subtree_graph") {
  const Graph c4 = cycle_graph(4);
  CHECK(is_subtree(c4, EdgeSubset{{0, 1}}));
  CHECK_FALSE(is_subtree(c4, EdgeSubset{{0, 1, 2, 3}}));  // the full cycle
  CHECK_FALSE(is_subtree(c4, EdgeSubset{{}}));

  const Graph k4 = complete_graph(4);
  // edges (0,1) and (2,3) are disjoint: connected fails
  const int e01 = k4.edge_index(0, 1), e23 = k4.edge_index(2, 3);
  CHECK_FALSE(is_subtree(k4, EdgeSubset{{e01, e23}}));

  const auto view = subtree_graph(c4, EdgeSubset{{1, 3}});  // edges (0,3), (2,3)
  CHECK(view.graph.node_count() == 3);
  CHECK(view.graph.is_tree());
  CHECK(view.original_nodes == std::vector<int>{0, 2, 3});
}

TEST_CASE("random trees are trees and random graphs honor size") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const Graph t = random_tree(2 + static_cast<int>(i % 5), rng);
    CHECK(t.is_tree());
  }
}
