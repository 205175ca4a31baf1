#include "exgraph/graph.hpp"

#include <algorithm>
#include <deque>

namespace exg {

LayerDecomposition bfs_layers(const Graph& g, int root) {
  if (root < 0 || root >= g.order()) throw std::invalid_argument("bfs_layers: root out of range");
  LayerDecomposition ld;
  ld.root = root;
  VertexSet seen(g.order());
  seen.set(root);
  std::vector<int> frontier{root};
  while (!frontier.empty()) {
    ld.layers.push_back(frontier);
    ld.balls.push_back(seen);
    std::vector<int> next;
    for (int v : frontier) {
      g.for_neighbors(v, [&](int w) {
        if (!seen.test(w)) {
          seen.set(w);
          next.push_back(w);
        }
      });
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return ld;
}

std::vector<int> bfs_distances(const Graph& g, int root) {
  std::vector<int> dist(g.order(), -1);
  dist[root] = 0;
  std::deque<int> q{root};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    g.for_neighbors(v, [&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    });
  }
  return dist;
}

std::optional<int> diameter(const Graph& g) {
  if (g.order() == 0) return 0;
  int best = 0;
  for (int v = 0; v < g.order(); ++v) {
    auto dist = bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

bool is_connected(const Graph& g) {
  if (g.order() <= 1) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<Bipartition> two_color(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(n, -1);
  Bipartition bp{VertexSet(n), VertexSet(n)};
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      bool odd = false;
      g.for_neighbors(v, [&](int w) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          q.push_back(w);
        } else if (color[w] == color[v]) {
          odd = true;
        }
      });
      if (odd) return std::nullopt;
    }
  }
  for (int v = 0; v < n; ++v) (color[v] == 0 ? bp.left : bp.right).set(v);
  return bp;
}

VertexSet peel_mask(const Graph& g, const VertexSet& mask, int d, std::vector<int>* removal_order) {
  VertexSet alive = mask;
  std::vector<int> deg(g.order(), 0);
  alive.for_each([&](int v) {
    int c = 0;
    g.for_neighbors(v, [&](int w) { c += alive.test(w); });
    deg[v] = c;
  });
  // Lowest index first among current violators.
  bool changed = true;
  while (changed) {
    changed = false;
    int victim = -1;
    for (int v = 0; v < g.order(); ++v) {
      if (alive.test(v) && deg[v] < d) {
        victim = v;
        break;
      }
    }
    if (victim >= 0) {
      alive.reset(victim);
      if (removal_order) removal_order->push_back(victim);
      g.for_neighbors(victim, [&](int w) {
        if (alive.test(w)) --deg[w];
      });
      changed = true;
    }
  }
  return alive;
}

PeelResult min_degree_subgraph(const Graph& g, int d) {
  if (d < 0) throw std::invalid_argument("min_degree_subgraph: d must be >= 0");
  PeelResult res;
  VertexSet all(g.order());
  for (int v = 0; v < g.order(); ++v) all.set(v);
  VertexSet alive = peel_mask(g, all, d, &res.removed);
  res.kept = alive.to_vector();
  res.subgraph = induced_subgraph(g, res.kept);
  return res;
}

Graph power_graph(const Graph& g, int ell) {
  if (ell < 1) throw std::invalid_argument("power_graph: ell must be >= 1");
  Graph p(g.order());
  for (int v = 0; v < g.order(); ++v) {
    auto dist = bfs_distances(g, v);
    for (int w = v + 1; w < g.order(); ++w)
      if (dist[w] >= 1 && dist[w] <= ell) p.add_edge(v, w);
  }
  return p;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  Graph s(static_cast<int>(keep.size()));
  std::vector<int> newid(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) newid[keep[i]] = static_cast<int>(i);
  for (int old : keep) {
    g.for_neighbors(old, [&](int w) {
      if (newid[w] >= 0 && old < w) s.add_edge(newid[old], newid[w]);
    });
  }
  return s;
}

}  // namespace exg
