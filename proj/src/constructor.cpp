#include "exgraph/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "exgraph/rng.hpp"

namespace exg {

namespace {

struct Mapped {
  Graph g;
  std::vector<int> to_host;    // local -> host
  std::vector<int> from_host;  // host -> local or -1
};

Mapped induced_mapped(const Graph& h, const std::vector<int>& verts) {
  Mapped m;
  m.to_host = verts;
  m.from_host.assign(h.order(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) m.from_host[verts[i]] = static_cast<int>(i);
  m.g = Graph(static_cast<int>(verts.size()));
  for (int host : verts) {
    h.for_neighbors(host, [&](int w) {
      if (m.from_host[w] >= 0 && host < w) m.g.add_edge(m.from_host[host], m.from_host[w]);
    });
  }
  return m;
}

// Bipartite subgraph on left ++ right keeping only the h-edges that cross.
Mapped cross_mapped(const Graph& h, const std::vector<int>& left, const std::vector<int>& right) {
  Mapped m;
  m.to_host = left;
  m.to_host.insert(m.to_host.end(), right.begin(), right.end());
  m.from_host.assign(h.order(), -1);
  for (std::size_t i = 0; i < m.to_host.size(); ++i) m.from_host[m.to_host[i]] = static_cast<int>(i);
  const int nl = static_cast<int>(left.size());
  m.g = Graph(static_cast<int>(m.to_host.size()));
  for (int i = 0; i < nl; ++i) {
    h.for_neighbors(left[i], [&](int w) {
      int j = m.from_host[w];
      if (j >= nl) m.g.add_edge(i, j);
    });
  }
  return m;
}

std::vector<int> host_path(const Mapped& m, const std::vector<int>& local) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int v : local) out.push_back(m.to_host[v]);
  return out;
}

FailureReport fail(std::string step, std::string detail) {
  return FailureReport{std::move(step), std::move(detail)};
}

// min-degree core threshold: explicit override, else half the average
// degree (at least 1)
int core_threshold(const Graph& g, int override_value) {
  if (override_value > 0) return override_value;
  int live = 0;
  for (int v = 0; v < g.order(); ++v) live += g.degree(v) > 0;
  if (live == 0) return 1;
  return std::max<int>(1, static_cast<int>(g.edge_count() / live));
}

struct EdgeAttemptContext {
  const Graph& g;
  const Graph& H;
  const Bipartition& parts;
  const ConstructorConfig& cfg;
};

ConstructorOutcome attempt_edge(const EdgeAttemptContext& ctx, int u, int v) {
  const Graph& g = ctx.g;
  const Graph& H = ctx.H;
  const ConstructorConfig& cfg = ctx.cfg;
  const int n = g.order();
  const bool general = cfg.mode == ConstructorConfig::Mode::general;

  DerivedConstants dc;
  if (general && cfg.smooth) dc = derive_constants(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, cfg.delta);

  // (4) balanced split, u forced into A. The deg/4 per-side guarantee is
  // asymptotic and can be outright infeasible on small hosts (a counting
  // argument rules it out for small projective incidence graphs), so on
  // failure the fraction is halved down to "one neighbor on each side".
  SplitResult split;
  {
    std::string last_err;
    bool got = false;
    for (double frac = cfg.split_min_frac;; frac /= 2) {
      try {
        split = balanced_split(H, Rng::derive(cfg.seed, 4), cfg.split_retries, frac);
        got = true;
        break;
      } catch (const std::runtime_error& e) {
        last_err = e.what();
      }
      int maxdeg = 0;
      for (int x = 0; x < H.order(); ++x) maxdeg = std::max(maxdeg, H.degree(x));
      if (frac * maxdeg <= 1.0) break;
    }
    if (!got) return fail("split", last_err);
  }
  if (split.b.test(u)) std::swap(split.a, split.b);
  const auto a_verts = split.a.to_vector();
  const auto b_verts = split.b.to_vector();
  Mapped HA = induced_mapped(H, a_verts);
  const int ua = HA.from_host[u];

  // (5) reach family from u inside H[A]
  PathFamily family;
  if (general) {
    const int cap = cfg.reach_cap > 0
                        ? cfg.reach_cap
                        : std::max<int>(1, static_cast<int>(std::ceil(n / std::log(std::max(3, n)))));
    const int ell_max = cfg.enforce_fidelity ? dc.ell0 : cfg.reach_ell_max;
    family = robust_reach(HA.g, ua, ell_max, cap, 0);
    if (cfg.enforce_fidelity && cfg.smooth) {
      const double need = mu_value(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, cfg.delta / 16.0) * n;
      if (family.endpoints.size() < need)
        return fail("reach", "family size " + std::to_string(family.endpoints.size()) +
                                 " below mu(delta/16)*n = " + std::to_string(need));
    }
  } else {
    const int da = HA.g.min_degree();
    if (da < 1) return fail("reach", "H[A] has an isolated vertex");
    try {
      family = c2l_reach(HA.g, ua, cfg.ell, da, Rng::derive(cfg.seed, 5));
    } catch (const std::exception& e) {
      return fail("reach", e.what());
    }
  }
  if (family.endpoints.empty()) return fail("reach", "empty reachability family from u");

  // (6) pigeonhole to a common path length p
  std::map<int, std::vector<int>> by_len;
  for (int z : family.endpoints) by_len[static_cast<int>(family.paths.at(z).size()) - 1].push_back(z);
  int p = -1;
  std::size_t best_count = 0;
  for (const auto& [len, zs] : by_len)
    if (zs.size() > best_count) {
      best_count = zs.size();
      p = len;
    }
  PathFamily slice;
  slice.root = ua;
  slice.usage.assign(HA.g.order(), 0);
  for (int z : by_len.at(p)) {
    slice.endpoints.push_back(z);
    slice.paths[z] = family.paths.at(z);
    for (int x : slice.paths[z]) ++slice.usage[x];
  }

  // (7) good-coloring filter -> S'
  PathFamily good;
  try {
    good = good_coloring_filter(slice, p, Rng::derive(cfg.seed, 7), cfg.coloring_retries, HA.g.order());
  } catch (const std::runtime_error& e) {
    return fail("coloring", e.what());
  }
  if (good.endpoints.empty()) return fail("coloring", "no good paths survived");
  std::vector<int> sprime;  // host indices of S'
  std::map<int, std::vector<int>> p_host;
  for (int z : good.endpoints) {
    int zh = HA.to_host[z];
    sprime.push_back(zh);
    p_host[zh] = host_path(HA, good.paths.at(z));
  }
  std::sort(sprime.begin(), sprime.end());
  VertexSet sprime_set = VertexSet::of(n, sprime);

  // (8) H' = H-edges from S' to B; min-degree core H''
  Mapped H1 = cross_mapped(H, sprime, b_verts);
  if (H1.g.edge_count() == 0) return fail("core_H2", "no H-edges from S' to B");
  int d_core;
  if (cfg.enforce_fidelity && general && cfg.smooth) {
    const double gamma2 = mu_value(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, cfg.delta / 16.0) *
                          cfg.delta / (std::pow(2.0, dc.ell0 + 4) * dc.ell0);
    d_core = static_cast<int>(std::ceil(gamma2 * std::pow(n, cfg.smooth->alpha - 1.0) - 1e-12));
  } else {
    d_core = core_threshold(H1.g, cfg.core_min_degree);
  }
  VertexSet h1_all(H1.g.order());
  for (int i = 0; i < H1.g.order(); ++i) h1_all.set(i);
  VertexSet core = peel_mask(H1.g, h1_all, d_core);
  if (core.empty())
    return fail("core_H2", "min-degree " + std::to_string(d_core) + " core of H[S',B] is empty");
  VertexSet core_host(n);
  core.for_each([&](int l) { core_host.set(H1.to_host[l]); });

  // (9) shortest path Q in H from v to the core (u excluded so the final
  // cycle can close through u); c2l mode targets one core side by parity
  VertexSet q_targets(n);
  core.for_each([&](int l) {
    int hst = H1.to_host[l];
    bool on_sprime = sprime_set.test(hst);
    if (general || (cfg.ell % 2 == 0 ? on_sprime : !on_sprime)) q_targets.set(hst);
  });
  if (q_targets.empty()) return fail("Q", "no admissible core side for Q");
  std::vector<int> dist(n, -1), parent(n, -1);
  dist[v] = 0;
  std::deque<int> bq{v};
  int y = q_targets.test(v) ? v : -1;
  while (!bq.empty() && y < 0) {
    int x = bq.front();
    bq.pop_front();
    H.for_neighbors(x, [&](int w) {
      if (w != u && dist[w] < 0) {
        dist[w] = dist[x] + 1;
        parent[w] = x;
        if (y < 0 && q_targets.test(w)) y = w;
        bq.push_back(w);
      }
    });
  }
  if (y < 0) return fail("Q", "core unreachable from v in H - u");
  std::vector<int> qpath;
  for (int x = y; x != -1; x = parent[x]) qpath.push_back(x);
  std::reverse(qpath.begin(), qpath.end());  // v .. y
  const long long q_len = static_cast<long long>(qpath.size()) - 1;
  VertexSet q_set = VertexSet::of(n, qpath);

  // (10) reach from y inside H'' (minus Q's interior in c2l mode)
  std::vector<int> core_verts;  // H1-local, ascending
  core.for_each([&](int l) { core_verts.push_back(l); });
  std::vector<int> core_hosts;
  for (int l : core_verts) core_hosts.push_back(H1.to_host[l]);
  Mapped H2;  // core graph over host ids
  {
    std::vector<int> keep;
    for (int hst : core_hosts) {
      if (!general && q_set.test(hst) && hst != y) continue;  // drop V(Q)\{y}
      keep.push_back(hst);
    }
    // edges of H1 (S'-B crossing) restricted to keep
    Mapped tmp;
    tmp.to_host = keep;
    tmp.from_host.assign(n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) tmp.from_host[keep[i]] = static_cast<int>(i);
    tmp.g = Graph(static_cast<int>(keep.size()));
    for (int l : core_verts) {
      int hst = H1.to_host[l];
      if (tmp.from_host[hst] < 0) continue;
      H1.g.for_neighbors(l, [&](int l2) {
        int h2 = H1.to_host[l2];
        if (tmp.from_host[h2] >= 0 && hst < h2 && core.test(l2)) tmp.g.add_edge(tmp.from_host[hst], tmp.from_host[h2]);
      });
    }
    H2 = std::move(tmp);
  }
  const int y2 = H2.from_host[y];

  // candidate (j, W, R-paths) sets
  struct WOption {
    long long r;
    std::vector<int> w_hosts;                // layer members on the S' side
    std::map<int, std::vector<int>> rpaths;  // host w -> host path y..w
  };
  std::vector<WOption> options;
  if (general) {
    auto ld = bfs_layers(H2.g, y2);
    std::vector<int> par(H2.g.order(), -1);
    {
      auto d2 = bfs_distances(H2.g, y2);
      for (int x = 0; x < H2.g.order(); ++x) {
        if (d2[x] <= 0) continue;
        H2.g.for_neighbors(x, [&](int w2) {
          if (par[x] < 0 && d2[w2] == d2[x] - 1) par[x] = w2;
        });
      }
    }
    std::optional<int> fidelity_j0;
    if (cfg.enforce_fidelity && cfg.smooth) {
      const double gamma2 = mu_value(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, cfg.delta / 16.0) *
                            cfg.delta / (std::pow(2.0, dc.ell0 + 4) * dc.ell0);
      auto cert = expansion_cert(H2.g, y2, gamma2, *cfg.smooth);
      if (auto* fr = std::get_if<FailureReport>(&cert)) return *fr;
      fidelity_j0 = std::get<ExpansionCert>(cert).j0;
    }
    for (std::size_t j = 0; j < ld.layers.size(); ++j) {
      if (fidelity_j0 && static_cast<int>(j) != *fidelity_j0 && static_cast<int>(j) != *fidelity_j0 + 1) continue;
      WOption opt;
      opt.r = static_cast<long long>(j);
      for (int l2 : ld.layers[j]) {
        int hst = H2.to_host[l2];
        if (!sprime_set.test(hst)) continue;
        std::vector<int> rp;
        for (int x = l2; x != -1; x = (x == y2 ? -1 : par[x])) rp.push_back(x);
        if (rp.back() != y2) continue;  // should not happen
        std::reverse(rp.begin(), rp.end());
        opt.w_hosts.push_back(hst);
        opt.rpaths[hst] = host_path(H2, rp);
      }
      if (!opt.w_hosts.empty()) options.push_back(std::move(opt));
    }
    // try larger layers first
    std::stable_sort(options.begin(), options.end(),
                     [](const WOption& a, const WOption& b) { return a.w_hosts.size() > b.w_hosts.size(); });
  } else {
    const int d2 = H2.g.min_degree();
    if (d2 < 1) return fail("expansion", "H'' minus Q has an isolated vertex");
    PathFamily yfam;
    try {
      yfam = c2l_reach(H2.g, y2, cfg.ell, d2, Rng::derive(cfg.seed, 10));
    } catch (const std::exception& e) {
      return fail("expansion", e.what());
    }
    WOption opt;
    opt.r = cfg.ell;
    for (int z : yfam.endpoints) {
      int hst = H2.to_host[z];
      if (!sprime_set.test(hst)) continue;
      opt.w_hosts.push_back(hst);
      opt.rpaths[hst] = host_path(H2, yfam.paths.at(z));
    }
    if (!opt.w_hosts.empty()) options.push_back(std::move(opt));
  }
  if (options.empty()) return fail("expansion", "no layer from y meets S'");

  bool saw_parity_anomaly = false;
  std::string last_detail = "no feasible (j, w) combination";
  for (const auto& opt : options) {
    const long long t_len = cfg.k - 1 - q_len - opt.r - p;
    if (t_len < 0) {
      last_detail = "t = " + std::to_string(t_len) + " < 0 at r=" + std::to_string(opt.r) +
                    ", q=" + std::to_string(q_len) + ", p=" + std::to_string(p);
      continue;
    }
    if (t_len % 2 != 0) {
      saw_parity_anomaly = true;
      continue;
    }
    // (11) drop W0 = {w : P_w meets V(Q)}
    std::vector<int> w1;
    for (int w : opt.w_hosts) {
      bool meets_q = false;
      for (int x : p_host.at(w)) meets_q = meets_q || q_set.test(x);
      if (!meets_q) w1.push_back(w);
    }
    if (w1.empty()) {
      last_detail = "W \\ W0 empty at r=" + std::to_string(opt.r);
      continue;
    }
    // (12) H* = min-degree core of H[W \ W0, B]
    Mapped HS = cross_mapped(H, w1, b_verts);
    if (HS.g.edge_count() == 0) {
      last_detail = "no H-edges from W\\W0 to B";
      continue;
    }
    int d_star;
    if (cfg.enforce_fidelity && general && cfg.smooth) {
      const double gamma2 = mu_value(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, cfg.delta / 16.0) *
                            cfg.delta / (std::pow(2.0, dc.ell0 + 4) * dc.ell0);
      const double mug = mu_value(cfg.smooth->alpha, cfg.smooth->beta, cfg.smooth->rho, gamma2);
      d_star = static_cast<int>(std::ceil(mug * cfg.delta / 16.0 * std::pow(n, cfg.smooth->alpha - 1.0) - 1e-12));
    } else {
      d_star = core_threshold(HS.g, cfg.core_min_degree);
    }
    VertexSet hs_all(HS.g.order());
    for (int i = 0; i < HS.g.order(); ++i) hs_all.set(i);
    VertexSet star = peel_mask(HS.g, hs_all, d_star);
    if (star.empty()) {
      last_detail = "min-degree " + std::to_string(d_star) + " core of H[W\\W0,B] is empty";
      continue;
    }
    std::vector<int> star_verts = star.to_vector();
    Mapped HSTAR;
    {
      std::vector<int> hosts;
      for (int l : star_verts) hosts.push_back(HS.to_host[l]);
      HSTAR.to_host = hosts;
      HSTAR.from_host.assign(n, -1);
      for (std::size_t i = 0; i < hosts.size(); ++i) HSTAR.from_host[hosts[i]] = static_cast<int>(i);
      HSTAR.g = Graph(static_cast<int>(hosts.size()));
      for (int l : star_verts) {
        HS.g.for_neighbors(l, [&](int l2) {
          if (star.test(l2) && l < l2) HSTAR.g.add_edge(HSTAR.from_host[HS.to_host[l]], HSTAR.from_host[HS.to_host[l2]]);
        });
      }
    }
    // (13)-(15): pick w in V(H*) on the W side, build T, assemble
    const int w_limit = 25;
    int tried = 0;
    for (int w_host : w1) {
      if (HSTAR.from_host[w_host] < 0) continue;
      if (++tried > w_limit) break;
      const auto& rpath = opt.rpaths.at(w_host);
      VertexSet avoid_local(HSTAR.g.order());
      for (int x : qpath)
        if (HSTAR.from_host[x] >= 0) avoid_local.set(HSTAR.from_host[x]);
      for (int x : rpath)
        if (x != w_host && HSTAR.from_host[x] >= 0) avoid_local.set(HSTAR.from_host[x]);
      VertexSet targets(HSTAR.g.order());
      for (int x : w1)
        if (HSTAR.from_host[x] >= 0) targets.set(HSTAR.from_host[x]);
      auto tpath_local = greedy_even_path(HSTAR.g, HSTAR.from_host[w_host], static_cast<int>(t_len),
                                          avoid_local, targets, cfg.greedy_budget_mult * std::max<long long>(cfg.k, 1));
      if (!tpath_local) {
        last_detail = "greedy even path of length " + std::to_string(t_len) + " not found in H*";
        continue;
      }
      std::vector<int> tpath = host_path(HSTAR, *tpath_local);
      const int w_star = tpath.back();
      const auto& ppath = p_host.at(w_star);  // u .. w*
      // assemble: u, v, Q interior+y, R interior+w, T interior+w*, P reversed interior
      CycleWitness cw;
      cw.through_edge = {u, v};
      cw.q = q_len;
      cw.r = opt.r;
      cw.t = t_len;
      cw.p = p;
      cw.vertices.push_back(u);
      for (int x : qpath) cw.vertices.push_back(x);                       // v .. y
      for (std::size_t i = 1; i < rpath.size(); ++i) cw.vertices.push_back(rpath[i]);  // .. w
      for (std::size_t i = 1; i < tpath.size(); ++i) cw.vertices.push_back(tpath[i]);  // .. w*
      for (std::size_t i = ppath.size() - 1; i >= 1; --i) cw.vertices.push_back(ppath[i - 1]);  // w*-1 .. u
      cw.vertices.pop_back();  // drop the closing u duplicate
      if (cw.validate(g, cfg.k)) return cw;
      last_detail = "assembled segments violated a disjointness contract";
    }
  }
  if (saw_parity_anomaly && last_detail == "no feasible (j, w) combination")
    return fail("parity anomaly",
                "t odd for every admissible layer; p=" + std::to_string(p) + ", q=" + std::to_string(q_len));
  return fail("assemble", last_detail);
}

}  // namespace

void ConstructorConfig::validate() const {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("constructor: k must be odd and >= 3");
  if (mode == Mode::c2l && ell < 2) throw std::invalid_argument("constructor: ell >= 2 required in c2l mode");
  if (enforce_fidelity) {
    long long k0;
    if (mode == Mode::c2l) {
      k0 = derive_constants_c2l(ell, delta).k0;
    } else {
      if (!smooth) throw std::invalid_argument("constructor: fidelity mode needs smoothness params");
      k0 = derive_constants(smooth->alpha, smooth->beta, smooth->rho, delta).k0;
    }
    if (k < k0)
      throw std::invalid_argument("constructor: fidelity requires k >= k0 = " + std::to_string(k0));
  }
}

std::string CycleWitness::to_json() const {
  return nlohmann::json{{"kind", "cycle_witness"},
                        {"vertices", vertices},
                        {"through_edge", {through_edge.first, through_edge.second}},
                        {"segments", {{"q", q}, {"r", r}, {"t", t}, {"p", p}}}}
      .dump();
}

bool CycleWitness::validate(const Graph& g, long long k) const {
  if (static_cast<long long>(vertices.size()) != k || k % 2 == 0) return false;
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!g.has_edge(vertices[i], vertices[(i + 1) % vertices.size()])) return false;
  if (vertices[0] != through_edge.first || vertices[1] != through_edge.second) return false;
  if (t % 2 != 0) return false;
  return 1 + q + r + t + p == k;
}

std::string BipartiteCert::to_json() const {
  return nlohmann::json{{"kind", "bipartite_cert"},
                        {"left", parts.left.to_vector()},
                        {"right", parts.right.to_vector()}}
      .dump();
}

SplitResult balanced_split(const Graph& h, std::uint64_t seed, int retries, double min_frac) {
  const int n = h.order();
  if (min_frac > 0) {
    for (int v = 0; v < n; ++v) {
      const int d = h.degree(v);
      if (d == 0) continue;
      const int need = static_cast<int>(std::ceil(min_frac * d - 1e-12));
      if (2 * std::max(1, need) > d)
        throw std::runtime_error("balanced_split: infeasible, vertex " + std::to_string(v) + " of degree " +
                                 std::to_string(d) + " cannot hold >= " + std::to_string(std::max(1, need)) +
                                 " neighbors on each side");
    }
  }
  std::vector<int> need(n);
  for (int v = 0; v < n; ++v)
    need[v] = static_cast<int>(std::ceil(min_frac * h.degree(v) - 1e-9));

  int worst_v = -1, worst_have = -1;
  for (int attempt = 0; attempt < retries; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<char> side(n);
    for (int v = 0; v < n; ++v) side[v] = rng.coin();
    std::vector<int> da(n, 0);
    for (int v = 0; v < n; ++v)
      h.for_neighbors(v, [&](int w) { da[v] += side[w] == 0; });
    auto deficiency = [&](int v) {
      return std::max(0, need[v] - da[v]) + std::max(0, need[v] - (h.degree(v) - da[v]));
    };
    long long total = 0;
    for (int v = 0; v < n; ++v) total += deficiency(v);
    // greedy repair: flip the vertex whose move most reduces the total
    // per-side shortfall; stop at a non-improving step
    for (int step = 0; total > 0 && step < 8 * n; ++step) {
      int best_w = -1;
      long long best_gain = 0;
      for (int w = 0; w < n; ++w) {
        long long gain = 0;
        const int delta = side[w] == 0 ? -1 : +1;  // effect on da[x] for x ~ w
        h.for_neighbors(w, [&](int x) {
          const long long before = deficiency(x);
          da[x] += delta;
          gain += before - deficiency(x);
          da[x] -= delta;
        });
        if (gain > best_gain) {
          best_gain = gain;
          best_w = w;
        }
      }
      if (best_w < 0) {
        // plateau: force a random neighbor of a deficient vertex over to its
        // short side, even at zero/negative gain, to escape the local optimum
        std::vector<int> deficient;
        for (int v = 0; v < n; ++v)
          if (deficiency(v) > 0) deficient.push_back(v);
        const int v = deficient[static_cast<int>(rng.below(deficient.size()))];
        const char surplus = da[v] < need[v] ? 1 : 0;  // side to take from
        std::vector<int> movable;
        h.for_neighbors(v, [&](int w) {
          if (side[w] == surplus) movable.push_back(w);
        });
        if (movable.empty()) break;
        best_w = movable[static_cast<int>(rng.below(movable.size()))];
        best_gain = 0;
        const int delta = side[best_w] == 0 ? -1 : +1;
        h.for_neighbors(best_w, [&](int x) {
          best_gain += deficiency(x);
          da[x] += delta;
          best_gain -= deficiency(x);
          da[x] -= delta;
        });
      }
      const int delta = side[best_w] == 0 ? -1 : +1;
      h.for_neighbors(best_w, [&](int x) { da[x] += delta; });
      side[best_w] ^= 1;
      total -= best_gain;
    }
    if (total == 0) {
      VertexSet a(n), b(n);
      for (int v = 0; v < n; ++v) (side[v] == 0 ? a : b).set(v);
      return {a, b};
    }
    for (int v = 0; v < n; ++v) {
      if (deficiency(v) == 0) continue;
      const int have = std::min(da[v], h.degree(v) - da[v]);
      if (have > worst_have) {
        worst_have = have;
        worst_v = v;
      }
    }
  }
  throw std::runtime_error("balanced_split: budget of " + std::to_string(retries) +
                           " retries exhausted; worst offender vertex " + std::to_string(worst_v) +
                           " with side-degree " + std::to_string(worst_have));
}

PathFamily good_coloring_filter(const PathFamily& pf, int p, std::uint64_t seed, int retries,
                                int host_order) {
  for (int z : pf.endpoints)
    if (static_cast<int>(pf.paths.at(z).size()) - 1 != p)
      throw std::invalid_argument("good_coloring_filter: paths must all have length p");
  PathFamily out;
  out.root = pf.root;
  out.usage.assign(host_order, 0);
  if (pf.endpoints.empty()) return out;

  const double denom = std::pow(2.0, p + 1);
  const long long need =
      static_cast<long long>(std::ceil(static_cast<double>(pf.endpoints.size()) / denom - 1e-12));
  for (int attempt = 0; attempt < retries; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<char> color2(host_order);
    for (int v = 0; v < host_order; ++v) color2[v] = rng.coin();
    std::vector<int> survivors;
    for (int z : pf.endpoints) {
      const auto& path = pf.paths.at(z);
      bool good = color2[z];
      for (std::size_t i = 0; i + 1 < path.size() && good; ++i) good = !color2[path[i]];
      if (good) survivors.push_back(z);
    }
    if (static_cast<long long>(survivors.size()) >= need) {
      for (int z : survivors) {
        out.endpoints.push_back(z);
        out.paths[z] = pf.paths.at(z);
        for (int x : out.paths[z]) ++out.usage[x];
      }
      return out;
    }
  }
  throw std::runtime_error("good_coloring_filter: budget of " + std::to_string(retries) +
                           " colorings exhausted without " + std::to_string(need) + " good paths");
}

namespace {

bool greedy_dfs(const Graph& h, int t, const VertexSet& avoid, const std::optional<VertexSet>& targets,
                long long& budget, VertexSet& used, std::vector<int>& path) {
  const int v = path.back();
  if (static_cast<int>(path.size()) - 1 == t)
    return !targets || targets->test(v);
  if (budget-- <= 0) return false;
  bool found = false;
  h.for_neighbors(v, [&](int w) {
    if (found || used.test(w) || avoid.test(w)) return;
    used.set(w);
    path.push_back(w);
    if (greedy_dfs(h, t, avoid, targets, budget, used, path)) {
      found = true;
      return;
    }
    path.pop_back();
    used.reset(w);
  });
  return found;
}

}  // namespace

std::optional<std::vector<int>> greedy_even_path(const Graph& h, int w, int t, const VertexSet& avoid,
                                                 const std::optional<VertexSet>& targets,
                                                 long long budget) {
  if (t < 0 || t % 2 != 0) throw std::invalid_argument("greedy_even_path: t must be even and >= 0");
  std::vector<int> path{w};
  if (t == 0) {
    if (targets && !targets->test(w)) return std::nullopt;
    return path;
  }
  VertexSet used(h.order());
  used.set(w);
  if (greedy_dfs(h, t, avoid, targets, budget, used, path)) return path;
  return std::nullopt;
}

ConstructorOutcome find_odd_cycle(const Graph& g, const ConstructorConfig& cfg) {
  cfg.validate();
  if (!is_connected(g)) throw std::invalid_argument("find_odd_cycle: input must be connected");
  auto bz = bipartize(g);

  std::vector<std::pair<int, int>> same_side;
  for (auto [a, b] : g.edges())
    if (bz.parts.left.test(a) == bz.parts.left.test(b)) same_side.emplace_back(a, b);
  if (same_side.empty()) return BipartiteCert{bz.parts};

  FailureReport last{"same_side", "unreached"};
  const std::size_t limit = cfg.try_all_same_side_edges ? same_side.size() : 1;
  ConstructorConfig run_cfg = cfg;
  for (int rs = 0; rs < std::max(1, cfg.restarts); ++rs) {
    run_cfg.seed = rs == 0 ? cfg.seed : Rng::derive(cfg.seed, 1000 + static_cast<std::uint64_t>(rs));
    EdgeAttemptContext ctx{g, bz.h, bz.parts, run_cfg};
    for (std::size_t i = 0; i < limit; ++i) {
      auto out = attempt_edge(ctx, same_side[i].first, same_side[i].second);
      if (std::holds_alternative<CycleWitness>(out)) return out;
      last = std::get<FailureReport>(out);
      last.detail += " [edge " + std::to_string(same_side[i].first) + "-" + std::to_string(same_side[i].second) + "]";
    }
  }
  return last;
}

PeelReport peel_bipartize(const Graph& g, double delta, double alpha) {
  if (!(delta > 0) || !(alpha > 1 && alpha < 2))
    throw std::invalid_argument("peel_bipartize: require delta > 0 and 1 < alpha < 2");
  const int n = g.order();
  PeelReport rep;
  rep.threshold = delta * std::pow(n, alpha - 1.0);
  const int d_int = static_cast<int>(std::ceil(rep.threshold - 1e-12));  // deg < tau  <=>  deg < d_int
  VertexSet all(n);
  for (int v = 0; v < n; ++v) all.set(v);
  VertexSet alive = peel_mask(g, all, d_int, &rep.removed);
  rep.kept = alive.to_vector();
  rep.h = induced_subgraph(g, rep.kept);
  rep.removed_edges = static_cast<long long>(g.edge_count()) - static_cast<long long>(rep.h.edge_count());
  rep.h_bipartite = two_color(rep.h).has_value();
  rep.inequality_ok = static_cast<double>(rep.h.edge_count()) >=
                      static_cast<double>(g.edge_count()) - rep.removed.size() * rep.threshold - 1e-9;
  return rep;
}

std::string PeelReport::to_json() const {
  return nlohmann::json{{"kind", "peel_report"},
                        {"removed", removed},
                        {"removed_edges", removed_edges},
                        {"kept", kept},
                        {"h_bipartite", h_bipartite},
                        {"threshold", threshold},
                        {"inequality_ok", inequality_ok}}
      .dump();
}

}  // namespace exg
