#ifndef EXGRAPH_SEARCH_HPP
#define EXGRAPH_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "exgraph/forbidden.hpp"
#include "exgraph/graph.hpp"

namespace exg {

// (alpha,beta)-quasi-smoothness parameters: upper density rho, additive
// constant bigC, lower density rho0.
struct SmoothnessParams {
  double alpha;
  double beta;
  double rho;
  double bigC;
  double rho0;
  void validate() const;
};

struct ExtremalRecord {
  bool bipartite = true;  // z(m,n,F) vs ex(n,F)
  int m = 0;              // unused for Turan records
  int n = 0;
  FamilySpec family;
  int value = 0;
  Graph witness;
  bool exact = true;
};

struct SearchOptions {
  int exact_cap_bipartite = 16;  // m+n
  int exact_cap_turan = 10;
  bool heuristic = false;  // randomized greedy lower bound beyond caps
  std::uint64_t seed = 0;
  int heuristic_restarts = 32;
};

// Exact maximum edge count over m-by-n bipartite F-free graphs, with one
// witness (backtracking over edge slots, degree-monotone symmetry pruning,
// branch-and-bound). Heuristic mode returns a non-exact lower bound.
ExtremalRecord zarankiewicz(int m, int n, const FamilySpec& f, const SearchOptions& opt = {});

// Exact ex(n, F) with witness.
ExtremalRecord turan(int n, const FamilySpec& f, const SearchOptions& opt = {});

// (t-s+1)^{1/s} m n^{1-1/s} + s m + s n^{2-2/s}, stated for m <= n.
double furedi_bound(int m, int n, int s, int t);

// value <= furedi_bound(m,n,s,t). Exact integer/radical arithmetic for
// s <= 2; for s >= 3 floating point with 1e-9 slack in the bound's favor.
bool furedi_bound_holds(long long value, int m, int n, int s, int t);

struct QuasiSmoothViolation {
  std::size_t record_index;
  std::string kind;  // "upper" or "lower"
  double bound;
  int value;
};

struct QuasiSmoothReport {
  std::vector<QuasiSmoothViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks value <= rho*m*n^{alpha-1} + C*n^beta for every record (Turan
// records use m = n) and value >= rho0*n^alpha for Turan records.
QuasiSmoothReport check_quasi_smooth(const std::vector<ExtremalRecord>& records, const SmoothnessParams& p);

}  // namespace exg

#endif
