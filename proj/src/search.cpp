#include "exgraph/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "exgraph/rng.hpp"

namespace exg {

namespace {

bool kst_choose(const Graph& g, const std::vector<int>& cands, std::size_t start,
                int remaining, int t, const VertexSet& common) {
  if (remaining == 0) return common.count() >= t;
  for (std::size_t i = start; i + remaining <= cands.size(); ++i) {
    VertexSet next = common;
    next &= g.neighbors(cands[i]);
    if (next.count() < t) continue;
    if (kst_choose(g, cands, i + 1, remaining - 1, t, next)) return true;
  }
  return false;
}

// Does g contain a K_{s,t} copy with u on the s-side and v on the t-side?
// The s-side then lies inside N(v), so candidates come from there.
bool kst_through_oriented(const Graph& g, int s, int t, int u, int v) {
  VertexSet base = g.neighbors(u);
  if (s == 1) return base.count() >= t;
  std::vector<int> cands;
  g.for_neighbors(v, [&](int w) {
    if (w != u) cands.push_back(w);
  });
  return kst_choose(g, cands, 0, s - 1, t, base);
}

// Does adding edge (u,v) to g (already added) create a copy of a pattern?
// Through-edge checks for K_{s,t} and cycles; full rescan for thetas.
bool creates_pattern(const Graph& g, const Pattern& p, int u, int v) {
  if (auto* kst = std::get_if<CompleteBipartite>(&p)) {
    return kst_through_oriented(g, kst->s, kst->t, u, v) ||
           kst_through_oriented(g, kst->s, kst->t, v, u);
  }
  if (auto* ec = std::get_if<EvenCycle>(&p)) {
    return has_path_exact(g, u, v, 2 * ec->ell - 1, VertexSet(g.order()));
  }
  if (auto* oc = std::get_if<OddCycle>(&p)) {
    return has_path_exact(g, u, v, oc->k - 1, VertexSet(g.order()));
  }
  auto* th = std::get_if<Theta>(&p);
  return find_theta(g, th->t, th->ell).has_value();
}

bool creates_any(const Graph& g, const FamilySpec& f, int u, int v) {
  for (const auto& p : f.patterns)
    if (creates_pattern(g, p, u, v)) return true;
  return false;
}

// Backtracking maximizer over a fixed slot order with degree-monotone
// symmetry pruning and branch-and-bound on remaining slots.
struct Backtracker {
  Graph work;
  std::vector<std::pair<int, int>> slots;
  const FamilySpec& family;
  // monotone_check[idx]: after deciding slot idx, vertex id whose degree is
  // final and must be <= degree of (id-1); -1 if none.
  std::vector<int> monotone_check;
  // leaf_monotone: degree-monotone run to verify at a full assignment.
  std::vector<std::vector<int>> leaf_monotone;

  int best = -1;
  Graph best_witness;

  void run(std::size_t idx, int edges) {
    if (edges + static_cast<int>(slots.size() - idx) <= best) return;
    if (idx == slots.size()) {
      for (const auto& run : leaf_monotone)
        for (std::size_t i = 1; i < run.size(); ++i)
          if (work.degree(run[i]) > work.degree(run[i - 1])) return;
      if (edges > best) {
        best = edges;
        best_witness = work;
      }
      return;
    }
    auto [u, v] = slots[idx];
    // include first: reaches large solutions early for tighter bounding
    work.add_edge(u, v);
    if (!creates_any(work, family, u, v) && monotone_ok(idx)) run(idx + 1, edges + 1);
    work.remove_edge(u, v);
    if (monotone_ok(idx)) run(idx + 1, edges);
  }

  bool monotone_ok(std::size_t idx) const {
    int id = monotone_check[idx];
    if (id <= 0) return true;
    return work.degree(id) <= work.degree(id - 1);
  }
};

ExtremalRecord heuristic_search(Graph base, std::vector<std::pair<int, int>> slots,
                                const FamilySpec& f, const SearchOptions& opt) {
  Graph best = base;
  for (int r = 0; r < opt.heuristic_restarts; ++r) {
    Rng rng(Rng::derive(opt.seed, static_cast<std::uint64_t>(r)));
    auto order = slots;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    Graph g = base;
    for (auto [u, v] : order) {
      g.add_edge(u, v);
      if (creates_any(g, f, u, v)) g.remove_edge(u, v);  // rollback
    }
    if (g.edge_count() > best.edge_count()) best = g;
  }
  ExtremalRecord rec;
  rec.family = f;
  rec.value = static_cast<int>(best.edge_count());
  rec.witness = std::move(best);
  rec.exact = false;
  return rec;
}

}  // namespace

void SmoothnessParams::validate() const {
  if (!(2 > alpha && alpha > beta && beta >= 1))
    throw std::invalid_argument("smoothness params: require 2 > alpha > beta >= 1");
  if (!(rho > 0 && bigC > 0 && rho0 > 0))
    throw std::invalid_argument("smoothness params: require rho, C, rho0 > 0");
}

ExtremalRecord zarankiewicz(int m, int n, const FamilySpec& f, const SearchOptions& opt) {
  if (m < 1 || n < 1 || m > n) throw std::invalid_argument("zarankiewicz: require 1 <= m <= n");
  if (f.patterns.empty()) throw std::invalid_argument("zarankiewicz: empty family");
  Graph base = Graph::with_parts(m, n);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) slots.emplace_back(i, m + j);
  if (opt.heuristic || m + n > opt.exact_cap_bipartite) {
    if (!opt.heuristic)
      throw std::invalid_argument("zarankiewicz: m+n exceeds exact cap " + std::to_string(opt.exact_cap_bipartite) + "; use heuristic mode for a lower bound");
    auto rec = heuristic_search(base, slots, f, opt);
    rec.bipartite = true;
    rec.m = m;
    rec.n = n;
    return rec;
  }
  Backtracker bt{base, slots, f, {}, {}};
  bt.monotone_check.assign(slots.size(), -1);
  for (std::size_t idx = 0; idx < slots.size(); ++idx)
    if (slots[idx].second == m + n - 1) bt.monotone_check[idx] = slots[idx].first;  // row complete
  std::vector<int> right(n);
  std::iota(right.begin(), right.end(), m);
  bt.leaf_monotone.push_back(right);
  bt.best_witness = base;
  bt.best = -1;
  bt.run(0, 0);
  ExtremalRecord rec;
  rec.bipartite = true;
  rec.m = m;
  rec.n = n;
  rec.family = f;
  rec.value = bt.best;
  rec.witness = std::move(bt.best_witness);
  rec.exact = true;
  return rec;
}

ExtremalRecord turan(int n, const FamilySpec& f, const SearchOptions& opt) {
  if (n < 1) throw std::invalid_argument("turan: require n >= 1");
  if (f.patterns.empty()) throw std::invalid_argument("turan: empty family");
  Graph base(n);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  if (opt.heuristic || n > opt.exact_cap_turan) {
    if (!opt.heuristic)
      throw std::invalid_argument("turan: n exceeds exact cap " + std::to_string(opt.exact_cap_turan) + "; use heuristic mode for a lower bound");
    auto rec = heuristic_search(base, slots, f, opt);
    rec.bipartite = false;
    rec.n = n;
    return rec;
  }
  Backtracker bt{base, slots, f, {}, {}};
  bt.monotone_check.assign(slots.size(), -1);
  for (std::size_t idx = 0; idx < slots.size(); ++idx)
    if (slots[idx].second == n - 1) bt.monotone_check[idx] = slots[idx].first;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  bt.leaf_monotone.push_back(all);
  bt.best_witness = base;
  bt.run(0, 0);
  ExtremalRecord rec;
  rec.bipartite = false;
  rec.n = n;
  rec.family = f;
  rec.value = bt.best;
  rec.witness = std::move(bt.best_witness);
  rec.exact = true;
  return rec;
}

double furedi_bound(int m, int n, int s, int t) {
  if (s < 1 || s > t) throw std::invalid_argument("furedi_bound: require 1 <= s <= t");
  if (m > n) throw std::invalid_argument("furedi_bound: stated for m <= n");
  const double sd = s;
  return std::pow(static_cast<double>(t - s + 1), 1.0 / sd) * m * std::pow(static_cast<double>(n), 1.0 - 1.0 / sd) +
         sd * m + sd * std::pow(static_cast<double>(n), 2.0 - 2.0 / sd);
}

bool furedi_bound_holds(long long value, int m, int n, int s, int t) {
  if (s < 1 || s > t) throw std::invalid_argument("furedi_bound_holds: require 1 <= s <= t");
  if (m > n) throw std::invalid_argument("furedi_bound_holds: stated for m <= n");
  if (s == 1) {
    // t*m + m + n, all integers
    return value <= static_cast<long long>(t) * m + m + n;
  }
  if (s == 2) {
    // value <= sqrt((t-1) m^2 n) + 2m + 2n, compared exactly by squaring
    long long lhs = value - 2LL * m - 2LL * n;
    if (lhs <= 0) return true;
    __int128 radicand = static_cast<__int128>(t - 1) * m * m * n;
    return static_cast<__int128>(lhs) * lhs <= radicand;
  }
  return static_cast<double>(value) <= furedi_bound(m, n, s, t) + 1e-9;
}

QuasiSmoothReport check_quasi_smooth(const std::vector<ExtremalRecord>& records, const SmoothnessParams& p) {
  p.validate();
  QuasiSmoothReport rep;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const int m = r.bipartite ? r.m : r.n;
    const int n = r.n;
    const double upper = p.rho * m * std::pow(n, p.alpha - 1) + p.bigC * std::pow(n, p.beta);
    if (r.value > upper + 1e-9) rep.violations.push_back({i, "upper", upper, r.value});
    if (!r.bipartite) {
      const double lower = p.rho0 * std::pow(n, p.alpha);
      if (r.value < lower - 1e-9) rep.violations.push_back({i, "lower", lower, r.value});
    }
  }
  return rep;
}

}  // namespace exg
