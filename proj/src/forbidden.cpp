#include "exgraph/forbidden.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace exg {

namespace {

void check_caps(const Pattern& p, const DetectCaps& caps) {
  if (auto* kst = std::get_if<CompleteBipartite>(&p)) {
    if (kst->s < 1 || kst->s > kst->t) throw std::invalid_argument("K_{s,t}: require 1 <= s <= t");
    if (kst->t > caps.max_st) throw std::invalid_argument("K_{s,t}: t exceeds cap");
  } else if (auto* ec = std::get_if<EvenCycle>(&p)) {
    if (ec->ell < 2) throw std::invalid_argument("even cycle: require ell >= 2");
    if (2 * ec->ell > caps.max_cycle_len) throw std::invalid_argument("even cycle: length exceeds cap");
  } else if (auto* th = std::get_if<Theta>(&p)) {
    if (th->t < 2 || th->ell < 2) throw std::invalid_argument("theta: require t >= 2 and ell >= 2");
    if (2 * th->ell > caps.max_cycle_len || th->t > caps.max_st) throw std::invalid_argument("theta: parameters exceed caps");
  } else if (auto* oc = std::get_if<OddCycle>(&p)) {
    if (oc->k < 3 || oc->k % 2 == 0) throw std::invalid_argument("odd cycle: require odd k >= 3");
    if (oc->k > caps.max_cycle_len) throw std::invalid_argument("odd cycle: length exceeds cap");
  }
}

// Lexicographic s-subset search with running bit-row intersection.
bool kst_rec(const Graph& g, int s, int t, int start, std::vector<int>& chosen,
             VertexSet& common, std::optional<Witness>& out) {
  if (static_cast<int>(chosen.size()) == s) {
    if (common.count() >= t) {
      Witness w;
      w.pattern = CompleteBipartite{s, t};
      w.side_a = chosen;
      common.for_each([&](int v) {
        if (static_cast<int>(w.side_b.size()) < t) w.side_b.push_back(v);
      });
      out = w;
      return true;
    }
    return false;
  }
  for (int v = start; v < g.order(); ++v) {
    VertexSet next = common;
    if (chosen.empty()) {
      next = g.neighbors(v);
    } else {
      next &= g.neighbors(v);
    }
    if (next.count() < t) continue;
    chosen.push_back(v);
    if (kst_rec(g, s, t, v + 1, chosen, next, out)) return true;
    chosen.pop_back();
  }
  return false;
}

struct CycleSearch {
  const Graph& g;
  int len;
  int root;
  std::vector<int> dist;  // to root within allowed vertex set
  VertexSet on_path;
  std::vector<int> path;

  bool expand(int v, int steps) {
    bool found = false;
    auto r = g.row(v);
    for (int i = 0; i < g.row_words() && !found; ++i) {
      Word w = r[i];
      while (w) {
        int b = std::countr_zero(w);
        w &= w - 1;
        int nb = i * 64 + b;
        if (nb <= root || on_path.test(nb)) continue;
        int remaining = len - steps - 1;  // edges left after moving to nb
        if (dist[nb] < 0 || dist[nb] > remaining) continue;
        on_path.set(nb);
        path.push_back(nb);
        if (steps + 1 == len - 1) {
          if (g.has_edge(nb, root)) {
            found = true;
            break;
          }
        } else if (expand(nb, steps + 1)) {
          found = true;
          break;
        }
        path.pop_back();
        on_path.reset(nb);
      }
    }
    return found;
  }
};

// Simple x-y paths of exactly `len` edges, internal vertices outside `used`;
// calls sink(path) for each found (lexicographic order); sink returns true
// to stop the enumeration.
template <class Sink>
bool paths_exact(const Graph& g, int x, int y, int len, VertexSet& used,
                 std::vector<int>& path, Sink&& sink) {
  int v = path.back();
  if (static_cast<int>(path.size()) == len) {
    if (g.has_edge(v, y)) {
      path.push_back(y);
      bool stop = sink(path);
      path.pop_back();
      return stop;
    }
    return false;
  }
  bool stop = false;
  auto r = g.row(v);
  for (int i = 0; i < g.row_words() && !stop; ++i) {
    Word w = r[i];
    while (w && !stop) {
      int b = std::countr_zero(w);
      w &= w - 1;
      int nb = i * 64 + b;
      if (nb == x || nb == y || used.test(nb)) continue;
      used.set(nb);
      path.push_back(nb);
      stop = paths_exact(g, x, y, len, used, path, sink);
      path.pop_back();
      used.reset(nb);
    }
  }
  return stop;
}

bool theta_branches(const Graph& g, int x, int y, int ell, int need,
                    VertexSet& used, std::vector<std::vector<int>>& acc) {
  if (need == 0) return true;
  std::vector<int> path{x};
  bool found = false;
  paths_exact(g, x, y, ell, used, path, [&](const std::vector<int>& p) {
    // claim internals, recurse for the remaining branches
    for (std::size_t i = 1; i + 1 < p.size(); ++i) used.set(p[i]);
    acc.push_back(p);
    if (theta_branches(g, x, y, ell, need - 1, used, acc)) {
      found = true;
      return true;
    }
    acc.pop_back();
    for (std::size_t i = 1; i + 1 < p.size(); ++i) used.reset(p[i]);
    return false;
  });
  return found;
}

}  // namespace

std::string pattern_name(const Pattern& p) {
  if (auto* kst = std::get_if<CompleteBipartite>(&p))
    return "K_{" + std::to_string(kst->s) + "," + std::to_string(kst->t) + "}";
  if (auto* ec = std::get_if<EvenCycle>(&p)) return "C_" + std::to_string(2 * ec->ell);
  if (auto* th = std::get_if<Theta>(&p))
    return "theta_{" + std::to_string(th->t) + "," + std::to_string(th->ell) + "}";
  return "C_" + std::to_string(std::get<OddCycle>(p).k);
}

FamilySpec FamilySpec::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("forbidden") || !j["forbidden"].is_array())
    throw std::invalid_argument("family spec: missing 'forbidden' array");
  FamilySpec f;
  for (const auto& e : j["forbidden"]) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "complete_bipartite") {
      f.patterns.push_back(CompleteBipartite{e.at("s").get<int>(), e.at("t").get<int>()});
    } else if (type == "even_cycle") {
      f.patterns.push_back(EvenCycle{e.at("ell").get<int>()});
    } else if (type == "theta") {
      f.patterns.push_back(Theta{e.at("t").get<int>(), e.at("ell").get<int>()});
    } else if (type == "odd_cycle") {
      f.patterns.push_back(OddCycle{e.at("k").get<int>()});
    } else {
      throw std::invalid_argument("family spec: unknown pattern type '" + type + "'");
    }
  }
  return f;
}

std::string FamilySpec::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : patterns) {
    nlohmann::json e;
    if (auto* kst = std::get_if<CompleteBipartite>(&p)) {
      e = {{"type", "complete_bipartite"}, {"s", kst->s}, {"t", kst->t}};
    } else if (auto* ec = std::get_if<EvenCycle>(&p)) {
      e = {{"type", "even_cycle"}, {"ell", ec->ell}};
    } else if (auto* th = std::get_if<Theta>(&p)) {
      e = {{"type", "theta"}, {"t", th->t}, {"ell", th->ell}};
    } else {
      e = {{"type", "odd_cycle"}, {"k", std::get<OddCycle>(p).k}};
    }
    arr.push_back(e);
  }
  return nlohmann::json{{"forbidden", arr}}.dump();
}

std::uint64_t FamilySpec::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : to_json()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool validate_witness(const Graph& g, const Witness& w) {
  auto in_range = [&](int v) { return v >= 0 && v < g.order(); };
  if (auto* kst = std::get_if<CompleteBipartite>(&w.pattern)) {
    if (static_cast<int>(w.side_a.size()) != kst->s) return false;
    if (static_cast<int>(w.side_b.size()) != kst->t) return false;
    std::vector<int> all = w.side_a;
    all.insert(all.end(), w.side_b.begin(), w.side_b.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
    for (int a : w.side_a)
      for (int b : w.side_b)
        if (!in_range(a) || !in_range(b) || !g.has_edge(a, b)) return false;
    return true;
  }
  if (std::holds_alternative<EvenCycle>(w.pattern) || std::holds_alternative<OddCycle>(w.pattern)) {
    int len = std::holds_alternative<EvenCycle>(w.pattern)
                  ? 2 * std::get<EvenCycle>(w.pattern).ell
                  : std::get<OddCycle>(w.pattern).k;
    if (static_cast<int>(w.cycle.size()) != len) return false;
    std::vector<int> sorted = w.cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int i = 0; i < len; ++i) {
      int a = w.cycle[i], b = w.cycle[(i + 1) % len];
      if (!in_range(a) || !in_range(b) || !g.has_edge(a, b)) return false;
    }
    return true;
  }
  auto* th = std::get_if<Theta>(&w.pattern);
  if (!th) return false;
  if (static_cast<int>(w.theta_paths.size()) != th->t) return false;
  std::vector<int> internals;
  for (const auto& p : w.theta_paths) {
    if (static_cast<int>(p.size()) != th->ell + 1) return false;
    if (p.front() != w.theta_x || p.back() != w.theta_y) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!in_range(p[i]) || !in_range(p[i + 1]) || !g.has_edge(p[i], p[i + 1])) return false;
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i) internals.push_back(p[i]);
  }
  internals.push_back(w.theta_x);
  internals.push_back(w.theta_y);
  std::sort(internals.begin(), internals.end());
  return std::adjacent_find(internals.begin(), internals.end()) == internals.end();
}

std::optional<Witness> find_kst(const Graph& g, int s, int t, const DetectCaps& caps) {
  check_caps(CompleteBipartite{s, t}, caps);
  std::optional<Witness> out;
  std::vector<int> chosen;
  VertexSet common(g.order());
  kst_rec(g, s, t, 0, chosen, common, out);
  return out;
}

std::optional<Witness> find_cycle_exact(const Graph& g, int len, const DetectCaps& caps) {
  if (len < 3) throw std::invalid_argument("find_cycle_exact: len must be >= 3");
  if (len > caps.max_cycle_len) throw std::invalid_argument("find_cycle_exact: len exceeds cap");
  if (len > g.order()) return std::nullopt;
  if (len % 2 == 1 && two_color(g)) return std::nullopt;  // bipartite: no odd cycle
  for (int root = 0; root < g.order(); ++root) {
    // distances to root in the subgraph induced by {v >= root}
    std::vector<int> dist(g.order(), -1);
    {
      std::vector<int> q{root};
      dist[root] = 0;
      for (std::size_t h = 0; h < q.size(); ++h) {
        int v = q[h];
        g.for_neighbors(v, [&](int w) {
          if (w >= root && dist[w] < 0) {
            dist[w] = dist[v] + 1;
            q.push_back(w);
          }
        });
      }
    }
    CycleSearch cs{g, len, root, std::move(dist), VertexSet(g.order()), {root}};
    cs.on_path.set(root);
    if (cs.expand(root, 0)) {
      Witness w;
      w.pattern = (len % 2 == 0) ? Pattern{EvenCycle{len / 2}} : Pattern{OddCycle{len}};
      w.cycle = cs.path;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_theta(const Graph& g, int t, int ell, const DetectCaps& caps) {
  check_caps(Theta{t, ell}, caps);
  for (int x = 0; x < g.order(); ++x) {
    if (g.degree(x) < t) continue;
    for (int y = x + 1; y < g.order(); ++y) {
      if (g.degree(y) < t) continue;
      VertexSet used(g.order());
      std::vector<std::vector<int>> acc;
      if (theta_branches(g, x, y, ell, t, used, acc)) {
        Witness w;
        w.pattern = Theta{t, ell};
        w.theta_x = x;
        w.theta_y = y;
        w.theta_paths = acc;
        return w;
      }
    }
  }
  return std::nullopt;
}

std::vector<int> cycle_spectrum(const Graph& g, int max_len, const DetectCaps& caps) {
  if (max_len > caps.max_cycle_len) throw std::invalid_argument("cycle_spectrum: max_len exceeds cap");
  std::vector<int> out;
  const bool bip = two_color(g).has_value();
  for (int len = 3; len <= max_len; ++len) {
    if (bip && len % 2 == 1) continue;
    if (find_cycle_exact(g, len, caps)) out.push_back(len);
  }
  return out;
}

std::optional<int> girth(const Graph& g) {
  int best = -1;
  for (int root = 0; root < g.order(); ++root) {
    auto dist = bfs_distances(g, root);
    std::vector<int> parent(g.order(), -1);
    // recompute parents along a BFS to skip the tree edge back to parent
    {
      std::vector<int> q{root};
      std::vector<int> d2(g.order(), -1);
      d2[root] = 0;
      for (std::size_t h = 0; h < q.size(); ++h) {
        int v = q[h];
        g.for_neighbors(v, [&](int w) {
          if (d2[w] < 0) {
            d2[w] = d2[v] + 1;
            parent[w] = v;
            q.push_back(w);
          }
        });
      }
    }
    for (int v = 0; v < g.order(); ++v) {
      if (dist[v] < 0) continue;
      g.for_neighbors(v, [&](int w) {
        if (w > v && dist[w] >= 0 && parent[w] != v && parent[v] != w) {
          int cand = dist[v] + dist[w] + 1;
          if (best < 0 || cand < best) best = cand;
        }
      });
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

bool has_path_exact(const Graph& g, int x, int y, int len, const VertexSet& avoid) {
  if (len == 0) return x == y;
  if (x == y) return false;
  if (len == 1) return g.has_edge(x, y);
  VertexSet used = avoid;
  std::vector<int> path{x};
  return paths_exact(g, x, y, len, used, path, [](const std::vector<int>&) { return true; });
}

FreenessResult is_family_free(const Graph& g, const FamilySpec& f, const DetectCaps& caps) {
  if (f.patterns.empty()) throw std::invalid_argument("is_family_free: empty family");
  for (const auto& p : f.patterns) {
    check_caps(p, caps);
    std::optional<Witness> w;
    if (auto* kst = std::get_if<CompleteBipartite>(&p)) {
      w = find_kst(g, kst->s, kst->t, caps);
    } else if (auto* ec = std::get_if<EvenCycle>(&p)) {
      w = find_cycle_exact(g, 2 * ec->ell, caps);
    } else if (auto* th = std::get_if<Theta>(&p)) {
      w = find_theta(g, th->t, th->ell, caps);
    } else {
      w = find_cycle_exact(g, std::get<OddCycle>(p).k, caps);
    }
    if (w) {
      w->pattern = p;
      return {false, w};
    }
  }
  return {true, std::nullopt};
}

}  // namespace exg
