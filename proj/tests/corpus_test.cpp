#include <gtest/gtest.h>

#include <random>

#include "firefighter/corpus.hpp"

using namespace firefighter;

TEST(Corpus, TreeCounts) {
  const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (std::size_t n = 1; n <= expected.size(); ++n) {
    auto trees = corpus::all_trees(n);
    EXPECT_EQ(trees.size(), expected[n - 1]) << "n = " << n;
    for (const auto &t : trees) {
      EXPECT_TRUE(is_tree(t));
      EXPECT_EQ(t.vertex_count(), n);
    }
  }
}

TEST(Corpus, ConnectedGraphCounts) {
  const std::vector<std::size_t> expected{1, 1, 2, 6, 21, 112, 853};
  for (std::size_t n = 1; n <= expected.size(); ++n) {
    auto graphs = corpus::all_connected_graphs(n);
    EXPECT_EQ(graphs.size(), expected[n - 1]) << "n = " << n;
    for (const auto &g : graphs) {
      EXPECT_TRUE(is_connected(g));
    }
  }
}

TEST(Corpus, CanonicalCodeIgnoresLabels) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Graph g = corpus::random_connected_graph(8, 0.35, rng);
    VertexList perm(8);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> relabelled;
    for (auto [u, v] : g.edges()) {
      relabelled.emplace_back(perm[u], perm[v]);
    }
    Graph h(8, relabelled);
    EXPECT_EQ(corpus::detail::graph_code(g), corpus::detail::graph_code(h));
  }
}

TEST(Corpus, RandomGraphIsConnectedAndSeeded) {
  std::mt19937_64 a(11);
  std::mt19937_64 b(11);
  for (int i = 0; i < 30; ++i) {
    Graph g = corpus::random_connected_graph(1 + i % 9, 0.2, a);
    EXPECT_TRUE(is_connected(g));
    EXPECT_EQ(g, corpus::random_connected_graph(1 + i % 9, 0.2, b));
  }
}
