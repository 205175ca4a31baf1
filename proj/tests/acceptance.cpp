// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check re-derives its expectations from independent oracles
// rather than trusting library internals.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "exgraph/constants.hpp"
#include "exgraph/constructor.hpp"
#include "exgraph/forbidden.hpp"
#include "exgraph/generators.hpp"
#include "exgraph/graph_io.hpp"
#include "exgraph/lemmas.hpp"
#include "exgraph/rng.hpp"
#include "exgraph/search.hpp"

namespace fs = std::filesystem;
using namespace exg;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what << "\n";
  if (!ok) ++g_failures;
}

FamilySpec k22_family() {
  FamilySpec f;
  f.patterns.push_back(CompleteBipartite{2, 2});
  return f;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  Graph g(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.add_edge(i, j);
  return g;
}

Graph connected_mindeg(int n, int d, std::uint64_t seed) {
  for (int attempt = 0;; ++attempt) {
    Graph g = random_mindeg_graph(n, d, Rng::derive(seed, 800 + attempt), MindegModel::gnp_repair);
    if (is_connected(g)) return g;
    if (attempt > 50) throw std::runtime_error("no connected instance");
  }
}

// ---- criterion 1 ---------------------------------------------------------

// Pruning-free enumerator over all m-by-n bipartite graphs as row masks.
int zarankiewicz_naive(int m, int n) {
  int best = 0;
  const std::uint32_t limit = 1u << (m * n);
  const std::uint32_t row_mask = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    bool free = true;
    for (int i = 0; i < m && free; ++i)
      for (int j = i + 1; j < m && free; ++j) {
        std::uint32_t common = (mask >> (i * n)) & (mask >> (j * n)) & row_mask;
        free = std::popcount(common) < 2;
      }
    if (!free) continue;
    int edges = std::popcount(mask);
    best = std::max(best, edges);
  }
  return best;
}

void criterion1() {
  bool ok = true;
  FamilySpec f = k22_family();
  for (int m = 1; m <= 5 && ok; ++m)
    for (int n = m; m + n <= 10 && ok; ++n) {
      const int naive = zarankiewicz_naive(m, n);
      auto rec = zarankiewicz(m, n, f);
      ok = rec.value == naive && furedi_bound_holds(rec.value, m, n, 2, 2) &&
           is_family_free(rec.witness, f).free &&
           static_cast<int>(rec.witness.edge_count()) == rec.value;
    }
  report(1, "zarankiewicz matches the pruning-free enumerator and the exact analytic bound", ok);
}

// ---- criteria 2-5 --------------------------------------------------------

void criterion2() {
  int pass = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Graph g = connected_mindeg(10 + static_cast<int>(s % 51), 2 + static_cast<int>(s % 4), s);
    auto r = bipartize(g);
    bool ok = is_connected(r.h) && two_color(r.h).has_value();
    for (int v = 0; v < g.order() && ok; ++v) ok = 2 * r.h.degree(v) >= g.degree(v);
    pass += ok;
  }
  report(2, "bipartize degree/connectivity guarantee on 200 instances (" + std::to_string(pass) +
                "/200)",
         pass == 200);
}

void criterion3() {
  int pass = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int d = 3 + static_cast<int>(s % 5);
    const int n = 12 + static_cast<int>(s % 40);
    Graph g = connected_mindeg(n, d, 7000 + s);
    auto diam = diameter(g);
    pass += diam && *diam <= 3.0 * n / d;
  }
  report(3, "diameter bound 3n/D on 200 planted min-degree instances (" + std::to_string(pass) +
                "/200)",
         pass == 200);
}

void criterion4() {
  int pass = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Graph g = connected_mindeg(15 + static_cast<int>(s % 25), 3, 9000 + s);
    const int ell_max = 3, cap = 2 + static_cast<int>(s % 3);
    PathFamily pf = robust_reach(g, 0, ell_max, cap, 0);
    bool ok = pf.validate(g, false);
    for (int v = 0; v < g.order() && ok; ++v)
      if (v != pf.root) ok = pf.usage[v] <= cap;
    if (ok && pf.maximal) {
      VertexSet blocked(g.order());
      for (int v = 0; v < g.order(); ++v)
        if (v != pf.root && pf.usage[v] >= cap) blocked.set(v);
      VertexSet in_s = VertexSet::of(g.order(), pf.endpoints);
      std::vector<int> dist(g.order(), -1);
      std::vector<int> q{pf.root};
      dist[pf.root] = 0;
      for (std::size_t h = 0; h < q.size() && ok; ++h) {
        int x = q[h];
        if (dist[x] == ell_max) continue;
        g.for_neighbors(x, [&](int w) {
          if (dist[w] >= 0 || blocked.test(w)) return;
          dist[w] = dist[x] + 1;
          if (!in_s.test(w)) ok = false;
          q.push_back(w);
        });
      }
    }
    pass += ok;
  }
  report(4, "robust reach validity/cap/maximality on 100 instances (" + std::to_string(pass) +
                "/100)",
         pass == 100);
}

void criterion5() {
  bool ok = true;
  for (int q : {2, 3, 4, 5}) {
    Graph g = incidence_graph(PrimePower::parse(q));
    const int ell = 2, d = q + 1;
    auto ball = c2l_ball(g, 0, ell, d);
    ok = ok && ball.ball_size >= ball.threshold &&
         ball.threshold ==
             static_cast<long long>(std::ceil(std::pow(d / (4.0 * ell), ell) - 1e-12));
    PathFamily pf = c2l_reach(g, 0, ell, d, 17);
    ok = ok && pf.validate(g, false) && !pf.endpoints.empty();
    const long long cap = static_cast<long long>(
        std::ceil(std::pow(static_cast<double>(d) / (2 * ell), ell - 1) - 1e-9));
    for (int v = 0; v < g.order() && ok; ++v)
      if (v != pf.root) ok = pf.usage[v] <= cap;
    for (int z : pf.endpoints)
      ok = ok && static_cast<int>(pf.paths.at(z).size()) - 1 == ell;
    // tree shape: each endpoint path is the unique stored one and distinct
    // endpoints are distinct vertices, guaranteed by the map keys
  }
  report(5, "c2l reach/ball invariants on incidence instances", ok);
}

// ---- criterion 6 ---------------------------------------------------------

long long ref_ell0(long double a, long double b) {
  if (b == 1.0L) return static_cast<long long>(std::floor(1.0L / (a - 1.0L) + 1e-9L)) + 1;
  return static_cast<long long>(
             std::floor(std::log((2.0L - b) * (a - 1.0L) / (a - b)) / std::log(b) + 1e-9L)) +
         2;
}

long double ref_mu(long double a, long double b, long double r, long double d) {
  const long double g = std::pow(d / (12.0L * r), 1.0L / (a - 1.0L));
  long double m = 0.5L * std::pow(d / (2.0L * r), 1.0L / (a - 1.0L));
  m = std::min(m, (d / (4.0L * r)) * std::pow(g, 2.0L - a));
  return std::min(m, g / ref_ell0(a, b));
}

void criterion6() {
  bool ok = true;
  const double grid[][4] = {
      {1.5, 1.0, 1.0, 1.0},  {1.5, 1.0, 2.0, 1.0},  {1.25, 1.0, 1.0, 1.0},
      {1.75, 1.0, 1.0, 2.0}, {1.8, 1.2, 1.0, 1.0},  {1.9, 1.5, 0.5, 1.0},
      {1.6, 1.1, 3.0, 0.25}, {1.5, 1.2, 1.0, 4.0},  {1.7, 1.3, 2.0, 0.75},
      {1.5, 1.0, 1.0, 0.5},
  };
  for (const auto& g : grid) {
    auto dc = derive_constants(g[0], g[1], g[2], g[3]);
    const long long e0 = ref_ell0(g[0], g[1]);
    const long double gamma = std::pow(static_cast<long double>(g[3]) / (12.0L * g[2]),
                                       1.0L / (static_cast<long double>(g[0]) - 1.0L));
    const long double mu = ref_mu(g[0], g[1], g[2], g[3]);
    const long long bigL =
        static_cast<long long>(std::floor(3.0L / ref_mu(g[0], g[1], g[2], g[3] / 2.0L) + 1e-9L)) * e0;
    ok = ok && dc.ell0 == e0 && dc.bigL == bigL && dc.k0 == 2 * e0 + bigL + 2 &&
         std::fabs(dc.gamma - static_cast<double>(gamma)) <= 1e-12 * std::max(1.0, std::fabs(dc.gamma)) &&
         std::fabs(dc.mu - static_cast<double>(mu)) <= 1e-12 * std::max(1.0, std::fabs(dc.mu));
  }
  // c2l regime spot values audited by hand
  ok = ok && derive_constants_c2l(2, 1.0).k0 == 1542 && derive_constants_c2l(2, 16.0).k0 == 12;
  report(6, "derived-constant formulas agree with an independent recomputation", ok);
}

// ---- criterion 7 ---------------------------------------------------------

void criterion7() {
  int instances_ok = 0, witnesses = 0;
  for (int q : {3, 4, 5}) {
    Graph base = incidence_graph(PrimePower::parse(q));
    Graph g(base.order());
    for (auto [u, v] : base.edges()) g.add_edge(u, v);
    g.add_edge(0, 1);  // same-side spike
    bool instance_ok = true;
    bool instance_witness = false;
    for (long long k = 7; k <= 2 * q + 7; k += 2) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        ConstructorConfig cfg;
        cfg.k = k;
        cfg.seed = seed;
        cfg.try_all_same_side_edges = true;
        auto out = find_odd_cycle(g, cfg);
        if (auto* cw = std::get_if<CycleWitness>(&out)) {
          instance_witness = true;
          instance_ok = instance_ok && cw->validate(g, k) && cw->t % 2 == 0 &&
                        (static_cast<long long>(cw->vertices.size()) % 2) == 1;
        } else if (auto* fr = std::get_if<FailureReport>(&out)) {
          // diagnosis confirmation: the stage failure reproduces exactly
          auto again = find_odd_cycle(g, cfg);
          auto* fr2 = std::get_if<FailureReport>(&again);
          instance_ok = instance_ok && !fr->step.empty() && fr2 && fr2->step == fr->step &&
                        fr2->detail == fr->detail;
        } else {
          instance_ok = false;  // a spiked graph is never bipartite
        }
      }
    }
    instances_ok += instance_ok;
    witnesses += instance_witness;
  }
  report(7, "odd-cycle pipeline on spiked incidence graphs (" + std::to_string(instances_ok) +
                "/3 consistent, " + std::to_string(witnesses) + " with witnesses)",
         instances_ok == 3 && witnesses >= 1);
}

// ---- criterion 8 ---------------------------------------------------------

void criterion8() {
  bool ok = true;
  for (int t : {2, 3}) {
    auto res = random_theta_free(12, 12, t, 2, 42 + t);
    ok = ok && !find_theta(res.g, t, 2).has_value() && res.report.edges_after > 0;
    const double p = res.report.p;
    if (p < 1.0) {
      // ell = 2 so q = 1: E[Y] <= E[X]/2 means m n^{t+1} p^{2t} <= m n p
      const double lhs = 12.0 * std::pow(12.0, t + 1) * std::pow(p, 2 * t);
      const double rhs = 12.0 * 12.0 * p;
      ok = ok && lhs <= rhs * (1 + 1e-9);
      // and p is extremal: nudging it up breaks the inequality
      const double p2 = p * (1 + 1e-6);
      ok = ok && 12.0 * std::pow(12.0, t + 1) * std::pow(p2, 2 * t) > 12.0 * 12.0 * p2;
    }
  }
  report(8, "first-moment theta-free generator: detector-clean output, numeric p solves the bound",
         ok);
}

// ---- criterion 9 ---------------------------------------------------------

void criterion9() {
  int pass = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    bool ok;
    if (s % 2 == 0) {
      Graph g = random_graph(20 + static_cast<int>(s % 20), 0.2, 500 + s);
      auto rep = peel_bipartize(g, 1.0, 1.4);
      ok = rep.inequality_ok &&
           static_cast<double>(rep.h.edge_count()) >=
               static_cast<double>(g.edge_count()) - rep.removed.size() * rep.threshold - 1e-9;
    } else {
      // bipartite witness plus pendant noise must peel back to bipartite
      Graph core = incidence_graph(PrimePower::parse(3));
      Graph g(core.order() + 5);
      for (auto [u, v] : core.edges()) g.add_edge(u, v);
      Rng rng(s);
      for (int i = 0; i < 5; ++i) g.add_edge(core.order() + i, static_cast<int>(rng.below(core.order())));
      auto rep = peel_bipartize(g, 1.0, 1.3);
      ok = rep.inequality_ok && rep.h_bipartite && rep.h.order() == core.order();
    }
    pass += ok;
  }
  report(9, "peeling edge-loss identity and bipartite recovery on 100 instances (" +
                std::to_string(pass) + "/100)",
         pass == 100);
}

// ---- criterion 10 --------------------------------------------------------

void criterion10() {
  int pass = 0;
  const int ell = 2;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int m = 12;
    Graph g = Graph::with_parts(m, m);
    Rng rng(4000 + s);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (rng.bernoulli(0.8)) g.add_edge(i, m + j);
    const double avg = 2.0 * g.edge_count() / g.order();
    if (avg < 4 * ell) continue;  // regenerate by skipping (counts as failure)
    auto gi = girth(g);
    if (!gi) continue;
    auto spec = cycle_spectrum(g, 2 * m);
    const int need = (*gi / 2 - 1) * ell;
    int run = 0, best_run = 0;
    for (int len = 4; len <= 2 * m; len += 2) {
      bool has = std::find(spec.begin(), spec.end(), len) != spec.end();
      run = has ? run + 1 : 0;
      best_run = std::max(best_run, run);
    }
    pass += best_run >= need;
  }
  report(10, "cycle spectrum holds (girth/2-1)*ell consecutive even lengths on 20 instances (" +
                 std::to_string(pass) + "/20)",
         pass == 20);
}

// ---- criterion 11 --------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool rerun_identical(const std::string& args, const fs::path& root, const std::string& name) {
  const fs::path a = root / (name + "_a");
  const fs::path b = root / (name + "_b");
  const std::string cli = EXGRAPH_CLI_PATH;
  if (std::system((cli + " " + args + " --out-dir " + a.string() + " >/dev/null 2>&1").c_str()) == -1)
    return false;
  if (!fs::exists(a / "manifest.json")) return false;
  if (std::system((cli + " rerun --manifest " + (a / "manifest.json").string() + " --out-dir " +
                   b.string() + " >/dev/null 2>&1")
                      .c_str()) == -1)
    return false;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) return false;
  }
  return true;
}

void criterion11() {
  fs::path root = fs::temp_directory_path() / "exgraph_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path fam = root / "k22.json";
  std::ofstream(fam) << k22_family().to_json();
  bool ok = rerun_identical("construct theta-free --m 12 --n 12 --t 2 --ell 2 --seed 7", root, "theta") &&
            rerun_identical("construct mindeg --n 20 --d 3 --model matchings --seed 5", root, "mindeg") &&
            rerun_identical("verify-lemma 2.3 --trials 5 --seed 2", root, "lemma") &&
            rerun_identical("zarankiewicz --m 6 --n 6 --heuristic --seed 9 --family " + fam.string(),
                            root, "zar");
  report(11, "seeded subcommands rerun byte-identically from their manifests", ok);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : std::to_string(g_failures) + " CRITERIA FAILED")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
