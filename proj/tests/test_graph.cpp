#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "exgraph/graph.hpp"
#include "exgraph/graph_io.hpp"
#include "exgraph/rng.hpp"

using namespace exg;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  Graph g(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.add_edge(i, j);
  return g;
}

// O(n^3) all-pairs oracle for the BFS implementations.
std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.order();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST_CASE("vertex set basics") {
  VertexSet s(130);
  s.set(0);
  s.set(64);
  s.set(129);
  CHECK(s.count() == 3);
  CHECK(s.test(64));
  s.reset(64);
  CHECK_FALSE(s.test(64));
  CHECK(s.to_vector() == std::vector<int>{0, 129});
  VertexSet t(130);
  t.set(0);
  VertexSet u = s;
  u &= t;
  CHECK(u.to_vector() == std::vector<int>{0});
  u = s;
  u.subtract(t);
  CHECK(u.to_vector() == std::vector<int>{129});
  CHECK(s.complement().count() == 128);
}

TEST_CASE("graph edges and degrees") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 1);  // duplicate is a no-op
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.min_degree() == 0);
  g.remove_edge(0, 1);
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 9), std::invalid_argument);
  CHECK_THROWS_AS(Graph(kMaxVertices + 1), std::invalid_argument);
}

TEST_CASE("bfs distances match the all-pairs oracle") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = random_graph(18, 0.15, s);
    auto fw = floyd_warshall(g);
    for (int root = 0; root < g.order(); ++root) {
      auto d = bfs_distances(g, root);
      for (int v = 0; v < g.order(); ++v) {
        if (d[v] < 0) CHECK(fw[root][v] >= (1 << 20));
        else CHECK(d[v] == fw[root][v]);
      }
    }
  }
}

TEST_CASE("layers partition the reachable set by distance") {
  Graph g = random_graph(25, 0.12, 7);
  auto ld = bfs_layers(g, 3);
  auto d = bfs_distances(g, 3);
  int covered = 0;
  for (std::size_t j = 0; j < ld.layers.size(); ++j)
    for (int v : ld.layers[j]) {
      CHECK(d[v] == static_cast<int>(j));
      CHECK(ld.balls[j].test(v));
      ++covered;
    }
  CHECK(covered == std::count_if(d.begin(), d.end(), [](int x) { return x >= 0; }));
}

TEST_CASE("diameter and connectivity") {
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  CHECK(is_connected(path));
  CHECK(diameter(path) == 3);
  Graph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_FALSE(is_connected(two));
  CHECK_FALSE(diameter(two).has_value());
}

TEST_CASE("two-coloring succeeds exactly on bipartite graphs") {
  CHECK(two_color(cycle_graph(8)).has_value());
  CHECK_FALSE(two_color(cycle_graph(9)).has_value());
  auto bp = two_color(cycle_graph(8));
  for (auto [u, v] : cycle_graph(8).edges()) CHECK(bp->left.test(u) != bp->left.test(v));
}

TEST_CASE("peeling reaches the requested min degree") {
  // triangle with two pendant vertices
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  auto r = min_degree_subgraph(g, 2);
  CHECK(r.kept == std::vector<int>{0, 1, 2});
  CHECK(r.removed == std::vector<int>{4, 3});
  CHECK(r.subgraph.min_degree() == 2);

  VertexSet all(5);
  for (int v = 0; v < 5; ++v) all.set(v);
  auto mask = peel_mask(g, all, 2);
  CHECK(mask.to_vector() == std::vector<int>{0, 1, 2});
  CHECK(peel_mask(g, all, 3).empty());
}

TEST_CASE("power graph uses hop distance") {
  Graph g = cycle_graph(6);
  Graph g2 = power_graph(g, 2);
  CHECK(g2.has_edge(0, 2));
  CHECK_FALSE(g2.has_edge(0, 3));
  CHECK(g2.edge_count() == 12);
}

TEST_CASE("induced subgraph keeps host order") {
  Graph g = cycle_graph(5);
  Graph h = induced_subgraph(g, {0, 1, 3});
  CHECK(h.order() == 3);
  CHECK(h.edge_count() == 1);
  CHECK(h.has_edge(0, 1));
}

TEST_CASE("graph text round trip is canonical") {
  Graph g = random_graph(12, 0.3, 5);
  std::string text = write_graph(g);
  Graph back = read_graph(text);
  CHECK(back == g);
  CHECK(write_graph(back) == text);
}

TEST_CASE("bigraph format enforces crossing edges") {
  Graph g = read_graph("bigraph 2 2\n0 2\n1 3\n");
  CHECK(g.parts().has_value());
  CHECK(g.parts()->left.test(0));
  CHECK(g.parts()->right.test(3));
  CHECK_THROWS_AS(read_graph("bigraph 2 2\n0 1\n"), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(read_graph("graph 3\n2 1\n"), ParseError);      // u >= v
  CHECK_THROWS_AS(read_graph("graph 3\n0 0\n"), ParseError);      // loop
  CHECK_THROWS_AS(read_graph("graph 3\n0 1\n0 1\n"), ParseError); // duplicate
  CHECK_THROWS_AS(read_graph("graph 3\n0 5\n"), ParseError);      // range
  CHECK_THROWS_AS(read_graph("nonsense\n"), ParseError);
  try {
    read_graph("graph 3\n0 1\n0 0\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("rng bounded draws are uniform-range and deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    auto x = a.below(7);
    CHECK(x < 7);
    CHECK(x == b.below(7));
  }
  CHECK(Rng::derive(1, 2) != Rng::derive(1, 3));
  CHECK(Rng::derive(1, 2) == Rng::derive(1, 2));
}
