#ifndef EXGRAPH_FORBIDDEN_HPP
#define EXGRAPH_FORBIDDEN_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exgraph/graph.hpp"

namespace exg {

// Pattern classes used throughout: K_{s,t}, C_{2ell}, theta_{t,ell}, C_k.
struct CompleteBipartite {
  int s, t;
  bool operator==(const CompleteBipartite&) const = default;
};
struct EvenCycle {  // C_{2*ell}
  int ell;
  bool operator==(const EvenCycle&) const = default;
};
struct Theta {  // t internally disjoint paths of length ell
  int t, ell;
  bool operator==(const Theta&) const = default;
};
struct OddCycle {  // C_k, k odd
  int k;
  bool operator==(const OddCycle&) const = default;
};

using Pattern = std::variant<CompleteBipartite, EvenCycle, Theta, OddCycle>;

std::string pattern_name(const Pattern& p);

// Explicit caps; exceeding them is an error, never silent truncation.
struct DetectCaps {
  int max_st = 8;
  int max_cycle_len = 64;
};

struct FamilySpec {
  std::vector<Pattern> patterns;

  // Parses {"forbidden":[{"type":"complete_bipartite","s":2,"t":2}, ...]}.
  static FamilySpec from_json(const std::string& json_text);
  std::string to_json() const;

  // FNV-1a over the canonical pattern list, for table keys.
  std::uint64_t hash() const;
};

struct Witness {
  Pattern pattern;
  // K_{s,t}: the two sides.
  std::vector<int> side_a, side_b;
  // Cycles: vertices in cyclic order.
  std::vector<int> cycle;
  // Theta: endpoints plus branch paths (each path runs x..y inclusive).
  int theta_x = -1, theta_y = -1;
  std::vector<std::vector<int>> theta_paths;
};

// Structural re-validation of a witness against the host graph.
bool validate_witness(const Graph& g, const Witness& w);

std::optional<Witness> find_kst(const Graph& g, int s, int t, const DetectCaps& caps = {});
std::optional<Witness> find_cycle_exact(const Graph& g, int len, const DetectCaps& caps = {});
std::optional<Witness> find_theta(const Graph& g, int t, int ell, const DetectCaps& caps = {});

// Exact set of cycle lengths <= max_len present in g.
std::vector<int> cycle_spectrum(const Graph& g, int max_len, const DetectCaps& caps = {});

// Length of a shortest cycle; nullopt iff forest.
std::optional<int> girth(const Graph& g);

// Is there a simple x-y path of exactly len edges whose internal vertices
// avoid `avoid`?
bool has_path_exact(const Graph& g, int x, int y, int len, const VertexSet& avoid);

struct FreenessResult {
  bool free;
  std::optional<Witness> witness;
};

// True iff no pattern of f occurs; otherwise the first witness under the
// family's pattern order.
FreenessResult is_family_free(const Graph& g, const FamilySpec& f, const DetectCaps& caps = {});

}  // namespace exg

#endif
