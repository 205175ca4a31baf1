#ifndef EXGRAPH_GENERATORS_HPP
#define EXGRAPH_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "exgraph/graph.hpp"

namespace exg {

struct PrimePower {
  int q = 0;
  int p = 0;
  int e = 0;
  // Factors q as p^e; throws std::invalid_argument if q is not a prime
  // power or q > 16.
  static PrimePower parse(int q);
};

// GF(q) arithmetic tables; elements are 0..q-1 (base-p digit encoding of
// polynomial coefficients).
class FieldTables {
 public:
  explicit FieldTables(const PrimePower& pp);

  int q() const { return q_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const { return inv_[a]; }  // a != 0

  // Exhaustive field-axiom verification (used by the test suite).
  bool verify_axioms() const;

 private:
  int q_, p_, e_;
  std::vector<int> add_, mul_, neg_, inv_;
};

// Canonical points of PG(2,q): triples over GF(q), first nonzero
// coordinate 1, lexicographic order. Size q^2+q+1.
std::vector<std::array<int, 3>> projective_points(const FieldTables& f);

// Bipartite point-line incidence graph of PG(2,q): parts of q^2+q+1
// vertices each, (q+1)-regular, girth 6.
Graph incidence_graph(const PrimePower& pp);

// Polarity graph on the q^2+q+1 projective points: edge xy iff x.y = 0,
// x != y. C_4-free, degrees q or q+1.
Graph polarity_graph(const PrimePower& pp);

struct ThetaFreeReport {
  double p = 0.0;          // sampling probability actually used
  bool p_numeric = false;  // true when p was solved numerically (even ell)
  long long edges_before = 0;
  long long edges_after = 0;
  long long copies_destroyed = 0;
  double analytic_floor = 0.0;  // (1/2)(mn)^((tq+t-1)/(2tq+t-1)), odd ell only
  bool floor_met = false;
  std::string to_json() const;
};

struct ThetaFreeResult {
  Graph g;  // bipartite, parts m and n
  ThetaFreeReport report;
};

// First-moment construction: sample bipartite G(m,n,p), then delete one
// edge per remaining theta_{t,ell} copy until none survive.
ThetaFreeResult random_theta_free(int m, int n, int t, int ell, std::uint64_t seed);

enum class MindegModel { matchings, gnp_repair };

// Random graph with min degree >= d: union of d edge-disjoint perfect
// matchings (n even; d-regular), or G(n, 2d/n) repaired by edge additions.
Graph random_mindeg_graph(int n, int d, std::uint64_t seed, MindegModel model);

}  // namespace exg

#endif
