#include "exgraph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "exgraph/forbidden.hpp"
#include "exgraph/rng.hpp"

namespace exg {

namespace {

// Monic irreducible polynomials over GF(p) for the non-prime orders <= 16,
// listed low degree first (constant, x, x^2, ...), leading 1 omitted.
std::vector<int> irreducible_tail(int p, int e) {
  if (p == 2 && e == 2) return {1, 1};        // x^2 + x + 1
  if (p == 2 && e == 3) return {1, 1, 0};     // x^3 + x + 1
  if (p == 2 && e == 4) return {1, 1, 0, 0};  // x^4 + x + 1
  if (p == 3 && e == 2) return {1, 0};        // x^2 + 1
  throw std::invalid_argument("no irreducible polynomial bundled for p^e");
}

std::vector<int> digits(int x, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
  return x;
}

}  // namespace

PrimePower PrimePower::parse(int q) {
  if (q < 2 || q > 16) throw std::invalid_argument("prime power out of range [2,16]");
  for (int p = 2; p <= q; ++p) {
    bool prime = p >= 2;
    for (int d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    int x = q, e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (x == 1) return {q, p, e};
  }
  throw std::invalid_argument(std::to_string(q) + " is not a prime power");
}

FieldTables::FieldTables(const PrimePower& pp) : q_(pp.q), p_(pp.p), e_(pp.e) {
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  const std::vector<int> tail = e_ > 1 ? irreducible_tail(p_, e_) : std::vector<int>{};
  for (int a = 0; a < q_; ++a) {
    auto da = digits(a, p_, e_);
    for (int b = 0; b < q_; ++b) {
      auto db = digits(b, p_, e_);
      std::vector<int> s(e_);
      for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = undigits(s, p_);
      // polynomial product then reduction by the irreducible modulus
      std::vector<int> prod(2 * e_ - 1, 0);
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int d = 2 * e_ - 2; d >= e_; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < e_; ++i) prod[d - e_ + i] = ((prod[d - e_ + i] - c * tail[i]) % p_ + p_) % p_;
      }
      prod.resize(e_);
      mul_[a * q_ + b] = undigits(prod, p_);
    }
  }
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = b;
      if (a != 0 && mul_[a * q_ + b] == 1) inv_[a] = b;
    }
  }
}

bool FieldTables::verify_axioms() const {
  for (int a = 0; a < q_; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || mul(a, 0) != 0) return false;
    if (add(a, neg(a)) != 0) return false;
    if (a != 0 && mul(a, inv(a)) != 1) return false;
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
      for (int c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) return false;
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
      }
    }
  }
  return true;
}

std::vector<std::array<int, 3>> projective_points(const FieldTables& f) {
  const int q = f.q();
  std::vector<std::array<int, 3>> pts;
  pts.reserve(q * q + q + 1);
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) pts.push_back({1, y, z});
  for (int z = 0; z < q; ++z) pts.push_back({0, 1, z});
  pts.push_back({0, 0, 1});
  return pts;
}

namespace {

int dot3(const FieldTables& f, const std::array<int, 3>& a, const std::array<int, 3>& b) {
  int s = 0;
  for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

Graph incidence_graph(const PrimePower& pp) {
  FieldTables f(pp);
  auto pts = projective_points(f);
  const int npts = static_cast<int>(pts.size());
  Graph g = Graph::with_parts(npts, npts);
  for (int i = 0; i < npts; ++i)
    for (int j = 0; j < npts; ++j)
      if (dot3(f, pts[i], pts[j]) == 0) g.add_edge(i, npts + j);
  return g;
}

Graph polarity_graph(const PrimePower& pp) {
  FieldTables f(pp);
  auto pts = projective_points(f);
  const int npts = static_cast<int>(pts.size());
  Graph g(npts);
  for (int i = 0; i < npts; ++i)
    for (int j = i + 1; j < npts; ++j)
      if (dot3(f, pts[i], pts[j]) == 0) g.add_edge(i, j);
  return g;
}

std::string ThetaFreeReport::to_json() const {
  return nlohmann::json{{"kind", "theta_free_report"},
                        {"p", p},
                        {"p_numeric", p_numeric},
                        {"edges_before", edges_before},
                        {"edges_after", edges_after},
                        {"copies_destroyed", copies_destroyed},
                        {"analytic_floor", analytic_floor},
                        {"floor_met", floor_met}}
      .dump();
}

ThetaFreeResult random_theta_free(int m, int n, int t, int ell, std::uint64_t seed) {
  if (t < 2 || ell < 2) throw std::invalid_argument("random_theta_free: require t >= 2, ell >= 2");
  if (m < 1 || n < 1 || m + n > 40)
    throw std::invalid_argument("random_theta_free: m+n capped at 40 for exact copy deletion; "
                                "use a smaller instance");
  ThetaFreeResult res;
  auto& rep = res.report;
  const int qq = ell / 2;
  const double dm = m, dn = n, dt = t, dq = qq;
  if (ell % 2 == 1) {
    const double expo = -dt * dq / (2 * dt * dq + dt - 1);
    rep.p = std::pow(dm, expo) * std::pow(dn, expo);
    rep.analytic_floor = 0.5 * std::pow(dm * dn, (dt * dq + dt - 1) / (2 * dt * dq + dt - 1));
  } else {
    // largest p with m^(t(q-1)+1) n^(tq+1) p^(2tq) <= m n p, by bisection
    rep.p_numeric = true;
    auto excess = [&](double p) {
      return (dt * (dq - 1) + 1) * std::log(dm) + (dt * dq + 1) * std::log(dn) + 2 * dt * dq * std::log(p) -
             (std::log(dm) + std::log(dn) + std::log(p));
    };
    double lo = 1e-12, hi = 1.0;
    if (excess(hi) <= 0) {
      rep.p = 1.0;
    } else {
      for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        (excess(mid) <= 0 ? lo : hi) = mid;
      }
      rep.p = lo;
    }
  }
  rep.p = std::min(1.0, rep.p);

  Graph g = Graph::with_parts(m, n);
  Rng rng(seed);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.bernoulli(rep.p)) g.add_edge(i, m + j);
  rep.edges_before = static_cast<long long>(g.edge_count());

  // delete-and-rescan until theta-free
  while (auto w = find_theta(g, t, ell)) {
    const auto& path = w->theta_paths.front();
    g.remove_edge(path[0], path[1]);
    ++rep.copies_destroyed;
  }
  rep.edges_after = static_cast<long long>(g.edge_count());
  rep.floor_met = ell % 2 == 1 && static_cast<double>(rep.edges_after) >= rep.analytic_floor - 1e-9;
  res.g = std::move(g);
  return res;
}

Graph random_mindeg_graph(int n, int d, std::uint64_t seed, MindegModel model) {
  if (d < 0 || d >= n) throw std::invalid_argument("random_mindeg_graph: require 0 <= d < n");
  Rng rng(seed);
  Graph g(n);
  if (model == MindegModel::matchings) {
    if (n % 2 != 0) throw std::invalid_argument("random_mindeg_graph: matchings model needs even n");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < d; ++round) {
      bool placed = false;
      for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        bool fresh = true;
        for (int i = 0; i < n && fresh; i += 2) fresh = !g.has_edge(perm[i], perm[i + 1]);
        if (!fresh) continue;
        for (int i = 0; i < n; i += 2) g.add_edge(perm[i], perm[i + 1]);
        placed = true;
      }
      if (!placed)
        throw std::runtime_error("random_mindeg_graph: could not place " + std::to_string(d) +
                                 " edge-disjoint matchings");
    }
  } else {
    const double p = std::min(1.0, n > 0 ? 2.0 * d / n : 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(p)) g.add_edge(i, j);
    for (int v = 0; v < n; ++v) {
      while (g.degree(v) < d) {
        // lowest-degree non-neighbor, random tie-break
        int best = -1, best_deg = n + 1, ties = 0;
        for (int w = 0; w < n; ++w) {
          if (w == v || g.has_edge(v, w)) continue;
          if (g.degree(w) < best_deg) {
            best = w;
            best_deg = g.degree(w);
            ties = 1;
          } else if (g.degree(w) == best_deg && rng.below(++ties) == 0) {
            best = w;
          }
        }
        if (best < 0) throw std::runtime_error("random_mindeg_graph: repair impossible");
        g.add_edge(v, best);
      }
    }
  }
  return g;
}

}  // namespace exg
