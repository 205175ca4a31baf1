#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "exgraph/forbidden.hpp"
#include "exgraph/generators.hpp"
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

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer pentagon
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);                // spokes
  }
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

// Exhaustive K_{s,t} oracle over vertex subsets.
bool kst_exists_naive(const Graph& g, int s, int t) {
  const int n = g.order();
  std::vector<int> side(s);
  auto rec = [&](auto&& self, int idx, int start) -> bool {
    if (idx == s) {
      VertexSet common = g.neighbors(side[0]);
      for (int i = 1; i < s; ++i) common &= g.neighbors(side[i]);
      for (int v : side) common.reset(v);
      return common.count() >= t;
    }
    for (int v = start; v < n; ++v) {
      side[idx] = v;
      if (self(self, idx + 1, v + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

// Exhaustive cycle-length oracle by DFS over simple paths.
bool cycle_exists_naive(const Graph& g, int len) {
  const int n = g.order();
  std::vector<int> path;
  VertexSet used(n);
  auto rec = [&](auto&& self, int v) -> bool {
    if (static_cast<int>(path.size()) == len)
      return g.has_edge(v, path.front());
    bool found = false;
    g.for_neighbors(v, [&](int w) {
      if (found || used.test(w) || w < path.front()) return;
      used.set(w);
      path.push_back(w);
      found = self(self, w);
      if (!found) {
        path.pop_back();
        used.reset(w);
      }
    });
    return found;
  };
  for (int root = 0; root < n; ++root) {
    path = {root};
    used = VertexSet(n);
    used.set(root);
    if (rec(rec, root)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("kst detection on fixed instances") {
  CHECK(find_kst(cycle_graph(4), 2, 2).has_value());
  CHECK_FALSE(find_kst(cycle_graph(5), 2, 2).has_value());
  auto w = find_kst(complete_bipartite(2, 3), 2, 3);
  REQUIRE(w.has_value());
  CHECK(validate_witness(complete_bipartite(2, 3), *w));
  CHECK(find_kst(complete_bipartite(3, 3), 3, 3).has_value());
  CHECK_FALSE(find_kst(complete_bipartite(3, 3), 3, 4).has_value());
}

TEST_CASE("kst detection agrees with the exhaustive oracle") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = random_graph(12, 0.3 + 0.02 * (s % 10), s);
    for (int ss = 1; ss <= 3; ++ss)
      for (int tt = ss; tt <= 3; ++tt) {
        auto w = find_kst(g, ss, tt);
        CHECK(w.has_value() == kst_exists_naive(g, ss, tt));
        if (w) CHECK(validate_witness(g, *w));
      }
  }
}

TEST_CASE("exact cycle finder agrees with the oracle") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = random_graph(11, 0.25, 100 + s);
    for (int len = 3; len <= 9; ++len) {
      auto w = find_cycle_exact(g, len);
      CHECK(w.has_value() == cycle_exists_naive(g, len));
      if (w) CHECK(validate_witness(g, *w));
    }
  }
}

TEST_CASE("petersen cycle spectrum") {
  Graph g = petersen();
  CHECK(girth(g) == 5);
  CHECK(cycle_spectrum(g, 10) == std::vector<int>{5, 6, 8, 9});
}

TEST_CASE("girth on small fixtures") {
  CHECK(girth(cycle_graph(7)) == 7);
  CHECK_FALSE(girth(complete_bipartite(1, 5)).has_value());  // star is a tree
  CHECK(girth(incidence_graph(PrimePower::parse(2))) == 6);
}

TEST_CASE("theta detection") {
  // theta_{2,2} is C_4
  CHECK(find_theta(cycle_graph(4), 2, 2).has_value());
  CHECK_FALSE(find_theta(cycle_graph(5), 2, 2).has_value());
  // K_{2,3} is theta_{3,2}
  auto w = find_theta(complete_bipartite(2, 3), 3, 2);
  REQUIRE(w.has_value());
  CHECK(validate_witness(complete_bipartite(2, 3), *w));
  CHECK_FALSE(find_theta(complete_bipartite(2, 2), 3, 2).has_value());
  // theta_{2,3} is C_6
  CHECK(find_theta(cycle_graph(6), 2, 3).has_value());
  // petersen has C_6 so theta_{2,3} as well
  CHECK(find_theta(petersen(), 2, 3).has_value());
}

TEST_CASE("family spec json round trip and freeness") {
  FamilySpec f = FamilySpec::from_json(
      R"({"forbidden":[{"type":"complete_bipartite","s":2,"t":2},{"type":"even_cycle","ell":3}]})");
  REQUIRE(f.patterns.size() == 2);
  CHECK(FamilySpec::from_json(f.to_json()).hash() == f.hash());

  auto res = is_family_free(cycle_graph(6), f);
  CHECK_FALSE(res.free);  // C_6 present
  REQUIRE(res.witness.has_value());
  CHECK(validate_witness(cycle_graph(6), *res.witness));
  CHECK(is_family_free(cycle_graph(5), f).free);
}

TEST_CASE("odd cycle patterns and caps") {
  FamilySpec f;
  f.patterns.push_back(OddCycle{5});
  CHECK_FALSE(is_family_free(cycle_graph(5), f).free);
  CHECK(is_family_free(cycle_graph(4), f).free);
  // bipartite shortcut: odd queries on bigraphs are free
  CHECK(is_family_free(complete_bipartite(4, 4), f).free);

  CHECK_THROWS_AS(find_kst(cycle_graph(4), 2, 9), std::invalid_argument);
  CHECK_THROWS_AS(find_cycle_exact(cycle_graph(4), 80), std::invalid_argument);
}

TEST_CASE("has_path_exact respects the avoid set") {
  Graph g = cycle_graph(6);
  VertexSet avoid(6);
  CHECK(has_path_exact(g, 0, 3, 3, avoid));
  avoid.set(1);
  avoid.set(4);
  CHECK_FALSE(has_path_exact(g, 0, 3, 3, avoid));
  CHECK(has_path_exact(g, 0, 1, 1, avoid));  // endpoints exempt from avoid
}
