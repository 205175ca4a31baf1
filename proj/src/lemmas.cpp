#include "exgraph/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "exgraph/rng.hpp"

namespace exg {

namespace {

nlohmann::json path_family_json(const PathFamily& pf) {
  nlohmann::json paths = nlohmann::json::array();
  for (int v : pf.endpoints) paths.push_back(pf.paths.at(v));
  std::map<int, int> histo;  // usage value -> vertex count
  for (std::size_t v = 0; v < pf.usage.size(); ++v)
    if (pf.usage[v] > 0 && static_cast<int>(v) != pf.root) ++histo[pf.usage[v]];
  nlohmann::json hj = nlohmann::json::object();
  for (auto [k, c] : histo) hj[std::to_string(k)] = c;
  return nlohmann::json{{"kind", "path_family"},
                        {"root", pf.root},
                        {"endpoints", pf.endpoints},
                        {"paths", paths},
                        {"usage_histogram", hj},
                        {"maximal", pf.maximal},
                        {"fidelity_warning", pf.fidelity_warning}};
}

}  // namespace

std::string PathFamily::to_json() const { return path_family_json(*this).dump(); }

bool PathFamily::validate(const Graph& g, bool endpoint_purity) const {
  std::vector<int> recount(g.order(), 0);
  VertexSet endset = VertexSet::of(g.order(), endpoints);
  for (int v : endpoints) {
    auto it = paths.find(v);
    if (it == paths.end()) return false;
    const auto& p = it->second;
    if (p.empty() || p.front() != root || p.back() != v) return false;
    VertexSet seen(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen.test(p[i])) return false;  // not simple
      seen.set(p[i]);
      if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1])) return false;
      ++recount[p[i]];
      if (endpoint_purity && i + 1 < p.size() && i > 0 && endset.test(p[i])) return false;
    }
  }
  return recount == usage;
}

std::string ExpansionCert::to_json() const {
  return nlohmann::json{{"kind", "expansion_cert"}, {"root", root},         {"j0", j0},
                        {"size_j0", size_j0},       {"size_j1", size_j1},   {"threshold", threshold},
                        {"absorption_ok", absorption_ok}}
      .dump();
}

std::string FailureReport::to_json() const {
  return nlohmann::json{{"kind", "failure"}, {"step", step}, {"detail", detail}}.dump();
}

BipartizeResult bipartize(const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("bipartize: input disconnected; call per component");
  const int n = g.order();
  std::vector<int> color(n, 0);

  auto cross_degree = [&](int v) {
    int c = 0;
    g.for_neighbors(v, [&](int w) { c += color[w] != color[v]; });
    return c;
  };
  auto cut_value = [&] {
    std::size_t c = 0;
    for (auto [u, v] : g.edges()) c += color[u] != color[v];
    return c;
  };

  BipartizeResult res;
  res.cut_history.push_back(cut_value());
  for (;;) {
    // flip the vertex with maximum positive gain, ties by lowest index
    bool improved = true;
    while (improved) {
      improved = false;
      int best_v = -1, best_gain = 0;
      for (int v = 0; v < n; ++v) {
        int cross = cross_degree(v);
        int gain = g.degree(v) - 2 * cross;  // same - cross
        if (gain > best_gain) {
          best_gain = gain;
          best_v = v;
        }
      }
      if (best_v >= 0) {
        color[best_v] ^= 1;
        res.cut_history.push_back(cut_value());
        improved = true;
      }
    }
    // connectivity of the crossing subgraph; merge by recoloring the
    // smaller component across the first same-side bridging edge
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = ncomp;
      std::deque<int> q{s};
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        g.for_neighbors(v, [&](int w) {
          if (color[w] != color[v] && comp[w] < 0) {
            comp[w] = ncomp;
            q.push_back(w);
          }
        });
      }
      ++ncomp;
    }
    if (ncomp == 1) break;
    std::vector<int> comp_size(ncomp, 0);
    for (int v = 0; v < n; ++v) ++comp_size[comp[v]];
    int eu = -1, ev = -1;
    for (auto [u, v] : g.edges()) {
      if (comp[u] != comp[v]) {
        eu = u;
        ev = v;
        break;
      }
    }
    int flip_comp = comp_size[comp[eu]] <= comp_size[comp[ev]] ? comp[eu] : comp[ev];
    for (int v = 0; v < n; ++v)
      if (comp[v] == flip_comp) color[v] ^= 1;
    res.cut_history.push_back(cut_value());
  }

  Graph h(n);
  for (auto [u, v] : g.edges())
    if (color[u] != color[v]) h.add_edge(u, v);
  Bipartition bp{VertexSet(n), VertexSet(n)};
  for (int v = 0; v < n; ++v) (color[v] == 0 ? bp.left : bp.right).set(v);
  h.set_parts(bp);
  res.parts = bp;
  res.h = std::move(h);
  return res;
}

std::variant<ExpansionCert, FailureReport> expansion_cert(const Graph& g, int u, double delta,
                                                          const SmoothnessParams& p) {
  if (u < 0 || u >= g.order()) throw std::invalid_argument("expansion_cert: root out of range");
  p.validate();
  const int n = g.order();
  const double min_deg = delta * std::pow(n, p.alpha - 1.0);
  std::vector<int> offenders;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < min_deg) offenders.push_back(v);
  if (!offenders.empty())
    throw PreconditionError("expansion_cert: minimum degree below delta*n^(alpha-1)", offenders);

  DerivedConstants dc = derive_constants(p.alpha, p.beta, p.rho, delta);
  const double thr = dc.mu * n;
  const long long need = static_cast<long long>(std::ceil(thr - 1e-12));
  auto ld = bfs_layers(g, u);
  auto layer_size = [&](int j) {
    return j < static_cast<int>(ld.layers.size()) ? static_cast<long long>(ld.layers[j].size()) : 0LL;
  };
  int best_j = 0;
  long long best_min = -1;
  for (int j = 0; j <= dc.ell0; ++j) {
    long long a = layer_size(j), b = layer_size(j + 1);
    if (a >= need && b >= need) {
      ExpansionCert cert;
      cert.root = u;
      cert.j0 = j;
      cert.size_j0 = static_cast<int>(a);
      cert.size_j1 = static_cast<int>(b);
      cert.threshold = thr;
      const double ball = static_cast<double>(ld.balls[std::min<std::size_t>(j + 1, ld.balls.size() - 1)].count());
      cert.absorption_ok = p.bigC * std::pow(ball, p.beta) <= p.rho * std::pow(ball, p.alpha);
      return cert;
    }
    if (std::min(a, b) > best_min) {
      best_min = std::min(a, b);
      best_j = j;
    }
  }
  FailureReport fr;
  fr.step = "expansion";
  fr.detail = "no j <= " + std::to_string(dc.ell0) + " with consecutive layers >= " + std::to_string(need) +
              "; best j=" + std::to_string(best_j) + " with min layer " + std::to_string(best_min);
  return fr;
}

PathFamily robust_reach(const Graph& g, int u, int ell_max, int cap, int target, bool batch) {
  if (u < 0 || u >= g.order()) throw std::invalid_argument("robust_reach: root out of range");
  if (cap < 1 || ell_max < 1) throw std::invalid_argument("robust_reach: require cap >= 1, ell_max >= 1");
  const int n = g.order();
  PathFamily pf;
  pf.root = u;
  pf.usage.assign(n, 0);
  VertexSet in_s(n);

  for (;;) {
    if (target > 0 && static_cast<int>(pf.endpoints.size()) >= target) break;
    // W = saturated vertices (root exempt); BFS from u in g - W
    VertexSet blocked(n);
    for (int v = 0; v < n; ++v)
      if (v != u && pf.usage[v] >= cap) blocked.set(v);
    std::vector<int> dist(n, -1), parent(n, -1);
    dist[u] = 0;
    std::deque<int> q{u};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (dist[v] == ell_max) continue;
      g.for_neighbors(v, [&](int w) {
        if (dist[w] < 0 && !blocked.test(w)) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push_back(w);
        }
      });
    }
    // candidates by (distance, index): deterministic augmentation order
    std::vector<int> cands;
    for (int v = 0; v < n; ++v)
      if (v != u && dist[v] > 0 && !in_s.test(v)) cands.push_back(v);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    int added = 0;
    for (int v : cands) {
      std::vector<int> path;
      for (int x = v; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      // the cap may have been reached mid-batch; skip, retry next round
      bool fits = true;
      for (std::size_t i = 1; i < path.size(); ++i)
        if (pf.usage[path[i]] >= cap) fits = false;
      if (!fits) continue;
      for (int x : path) ++pf.usage[x];
      pf.paths[v] = std::move(path);
      pf.endpoints.push_back(v);
      in_s.set(v);
      ++added;
      if (target > 0 && static_cast<int>(pf.endpoints.size()) >= target) break;
      if (!batch) break;
    }
    if (added == 0) {
      pf.maximal = true;
      break;
    }
  }
  std::sort(pf.endpoints.begin(), pf.endpoints.end());
  return pf;
}

namespace {

void check_c2l_preconditions(const Graph& g, int u, int ell, int d) {
  if (u < 0 || u >= g.order()) throw std::invalid_argument("c2l: root out of range");
  if (ell < 2) throw std::invalid_argument("c2l: require ell >= 2");
  if (!two_color(g)) throw PreconditionError("c2l: graph is not bipartite");
  if (auto w = find_cycle_exact(g, 2 * ell))
    throw PreconditionError("c2l: graph contains a C_" + std::to_string(2 * ell), {}, w);
  std::vector<int> offenders;
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) < d) offenders.push_back(v);
  if (!offenders.empty())
    throw PreconditionError("c2l: minimum degree below d=" + std::to_string(d), offenders);
}

}  // namespace

C2lBallResult c2l_ball(const Graph& g, int u, int ell, int d) {
  check_c2l_preconditions(g, u, ell, d);
  auto ld = bfs_layers(g, u);
  int ball = ld.balls[std::min<std::size_t>(ell, ld.balls.size() - 1)].count();
  const double floor_val = std::pow(static_cast<double>(d) / (4.0 * ell), static_cast<double>(ell));
  const long long need = static_cast<long long>(std::ceil(floor_val - 1e-12));
  if (ball < need) {
    // the ball bound is unconditional for C_{2ell}-free hosts, so a short
    // ball means a cycle slipped past the precondition scan
    auto w = find_cycle_exact(g, 2 * ell);
    throw PreconditionError("c2l_ball: |B_ell| below (d/4ell)^ell; host cannot be C_{2ell}-free", {}, w);
  }
  return {ball, need};
}

PathFamily c2l_reach(const Graph& g, int u, int ell, int d, std::uint64_t seed,
                     const C2lReachOptions& opt) {
  check_c2l_preconditions(g, u, ell, d);
  const int n = g.order();
  const int children = std::max(1, d / (2 * ell));

  PathFamily pf;
  pf.root = u;
  pf.usage.assign(n, 0);
  pf.fidelity_warning = d < opt.log_factor * ell * std::log(std::max(2, n));

  // Random ell-partition, then a layered tree: depth-i vertices pick their
  // first `children` neighbors lying in part i ("first parent wins", claimed
  // vertices still consume quota). Demanding every vertex see every part is
  // overly strict on small hosts — e.g. no 2-coloring of the smallest
  // projective plane avoids a monochromatic line — so instead the partition
  // is retried until the tree actually reaches depth ell.
  std::vector<int> part(n, 0);
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    for (int v = 0; v < n; ++v) part[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(ell)));

    std::vector<int> parent(n, -1), depth(n, -1);
    depth[u] = 0;
    std::vector<int> frontier{u};
    for (int level = 1; level <= ell; ++level) {
      std::vector<int> next;
      for (int v : frontier) {
        int taken = 0;
        auto r = g.row(v);
        for (int i = 0; i < g.row_words() && taken < children; ++i) {
          Word w = r[i];
          while (w && taken < children) {
            int b = std::countr_zero(w);
            w &= w - 1;
            int nb = i * 64 + b;
            if (nb == u) continue;  // the root's part is arbitrary; never a child
            if (part[nb] != level - 1) continue;  // parts are 0-indexed
            ++taken;
            if (depth[nb] < 0) {
              depth[nb] = level;
              parent[nb] = v;
              next.push_back(nb);
            }
          }
        }
      }
      frontier = std::move(next);
    }
    if (frontier.empty()) continue;
    for (int v : frontier) {
      std::vector<int> path;
      for (int x = v; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      for (int x : path) ++pf.usage[x];
      pf.paths[v] = std::move(path);
      pf.endpoints.push_back(v);
    }
    std::sort(pf.endpoints.begin(), pf.endpoints.end());
    return pf;
  }
  throw std::runtime_error("c2l_reach: no sampled ell-partition yielded a depth-" + std::to_string(ell) +
                           " tree after " + std::to_string(opt.max_retries) + " retries");
}

}  // namespace exg
