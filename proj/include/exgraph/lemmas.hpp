#ifndef EXGRAPH_LEMMAS_HPP
#define EXGRAPH_LEMMAS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "exgraph/constants.hpp"
#include "exgraph/forbidden.hpp"
#include "exgraph/graph.hpp"
#include "exgraph/search.hpp"

namespace exg {

struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& msg, std::vector<int> offenders = {},
                             std::optional<Witness> w = std::nullopt)
      : std::invalid_argument(msg), offenders(std::move(offenders)), witness(std::move(w)) {}
  std::vector<int> offenders;
  std::optional<Witness> witness;
};

// A family of root paths {P_v : v in S} with per-vertex usage counts (root
// exempt from the cap).
struct PathFamily {
  int root = 0;
  std::vector<int> endpoints;              // S, ascending
  std::map<int, std::vector<int>> paths;   // endpoint -> root..endpoint
  std::vector<int> usage;                  // recountable from paths
  bool maximal = false;                    // greedy stopped by exhaustion
  bool fidelity_warning = false;           // an asymptotic threshold was unmet
  std::string to_json() const;

  // Path validity, usage recount, optional endpoint-purity.
  bool validate(const Graph& g, bool endpoint_purity) const;
};

struct ExpansionCert {
  int root = 0;
  int j0 = 0;
  int size_j0 = 0;
  int size_j1 = 0;
  double threshold = 0.0;
  bool absorption_ok = true;  // C n^beta absorbed by rho n^alpha at this order
  std::string to_json() const;
};

struct FailureReport {
  std::string step;
  std::string detail;
  std::string to_json() const;
};

struct BipartizeResult {
  Graph h;  // spanning bipartite subgraph: exactly the crossing edges
  Bipartition parts;
  std::vector<std::size_t> cut_history;  // monotone nondecreasing
};

// Local-search maximum spanning bipartite subgraph: H connected and
// deg_H(v) >= deg_G(v)/2 for every v. Throws for disconnected input.
BipartizeResult bipartize(const Graph& g);

// Smallest j <= ell0 with both |N_j(u)| and |N_{j+1}(u)| >= mu*n, where
// (ell0, mu) come from derive_constants(p.alpha, p.beta, p.rho, delta).
std::variant<ExpansionCert, FailureReport> expansion_cert(const Graph& g, int u, double delta,
                                                          const SmoothnessParams& p);

// Greedy maximal robust-reachability family: paths of length <= ell_max
// from u, no non-root vertex on more than `cap` paths. Batch mode adds all
// newly reachable vertices of one sweep (skipping any addition that would
// breach the cap); one-at-a-time mode exists for fidelity testing.
PathFamily robust_reach(const Graph& g, int u, int ell_max, int cap, int target, bool batch = true);

struct C2lBallResult {
  int ball_size = 0;
  long long threshold = 0;  // ceil((d/4l)^l)
};

// |B_ell(u)| with the (d/4l)^l floor asserted; preconditions (bipartite,
// C_{2ell}-free, min degree >= d) verified, violations throw
// PreconditionError carrying a witness where applicable.
C2lBallResult c2l_ball(const Graph& g, int u, int ell, int d);

struct C2lReachOptions {
  int max_retries = 5000;
  double log_factor = 15.0;  // fidelity threshold d >= factor * ell * ln n
};

// Layered-tree reachability family for C_{2ell}-free bipartite graphs:
// seeded random ell-partition (retried), floor(d/2ell) children per
// expanded vertex, endpoints at depth exactly ell.
PathFamily c2l_reach(const Graph& g, int u, int ell, int d, std::uint64_t seed,
                     const C2lReachOptions& opt = {});

}  // namespace exg

#endif
