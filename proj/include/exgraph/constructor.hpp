#ifndef EXGRAPH_CONSTRUCTOR_HPP
#define EXGRAPH_CONSTRUCTOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exgraph/constants.hpp"
#include "exgraph/graph.hpp"
#include "exgraph/lemmas.hpp"
#include "exgraph/search.hpp"

namespace exg {

struct ConstructorConfig {
  long long k = 0;  // odd target cycle length
  enum class Mode { general, c2l } mode = Mode::general;

  // general mode parameters
  std::optional<SmoothnessParams> smooth;
  double delta = 1.0;
  // c2l mode parameter
  int ell = 2;

  std::uint64_t seed = 0;
  int split_retries = 200;
  int coloring_retries = 200;

  // paper-fidelity enforcement; relaxed mode replaces each asymptotic
  // threshold by the explicit knobs below
  bool enforce_fidelity = false;
  int reach_ell_max = 4;         // path-length bound for the reach family
  int reach_cap = 0;             // 0 -> ceil(n / ln n)
  double split_min_frac = 0.25;  // per-side degree fraction in balanced_split
  int core_min_degree = 0;       // 0 -> floor(avg degree / 2), min 1
  bool try_all_same_side_edges = false;
  long long greedy_budget_mult = 500;  // greedy path budget = mult * k
  int restarts = 8;                   // full pipeline retries with derived seeds

  void validate() const;
};

struct CycleWitness {
  std::vector<int> vertices;  // cyclic order starting u, v, ...
  std::pair<int, int> through_edge;
  long long q = 0, r = 0, t = 0, p = 0;  // segment lengths; 1+q+r+t+p = k
  std::string to_json() const;
  bool validate(const Graph& g, long long k) const;
};

struct BipartiteCert {
  Bipartition parts;
  std::string to_json() const;
};

using ConstructorOutcome = std::variant<CycleWitness, BipartiteCert, FailureReport>;

// Partition with every vertex keeping >= min_frac of its degree on each
// side; retried sampling. Throws std::runtime_error when the budget is
// exhausted (or the instance is provably infeasible).
struct SplitResult {
  VertexSet a, b;
};
SplitResult balanced_split(const Graph& h, std::uint64_t seed, int retries, double min_frac = 0.25);

// Random 2-coloring filter: keeps paths whose endpoint got color 2 and all
// other vertices color 1; retries until >= ceil(|S| / 2^(p+1)) survive.
// Surviving families are endpoint-pure by construction.
PathFamily good_coloring_filter(const PathFamily& pf, int p, std::uint64_t seed, int retries,
                                int host_order);

// Simple path of exactly t edges from w, internal+final vertices outside
// `avoid`, final vertex in `targets` when given. Deterministic DFS with an
// expansion budget; nullopt on exhaustion.
std::optional<std::vector<int>> greedy_even_path(const Graph& h, int w, int t, const VertexSet& avoid,
                                                 const std::optional<VertexSet>& targets,
                                                 long long budget);

// The full construction pipeline: certify bipartiteness or build an odd
// cycle of length cfg.k through a same-side edge, reporting the failing
// stage otherwise.
ConstructorOutcome find_odd_cycle(const Graph& g, const ConstructorConfig& cfg);

struct PeelReport {
  std::vector<int> removed;   // removal order (original indices)
  long long removed_edges = 0;
  Graph h;                    // reindexed survivor subgraph
  std::vector<int> kept;      // new index -> original
  bool h_bipartite = false;
  double threshold = 0.0;     // delta * n^(alpha-1), n the original order
  bool inequality_ok = true;  // e(H) >= e(G) - t * threshold
  std::string to_json() const;
};

// Iterated deletion of vertices below delta*n^(alpha-1) (n fixed at the
// original order), with the edge-loss inequality reported.
PeelReport peel_bipartize(const Graph& g, double delta, double alpha);

}  // namespace exg

#endif
