#ifndef EXGRAPH_GRAPH_HPP
#define EXGRAPH_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exg {

using Word = std::uint64_t;

// Compile-time bound on graph order; the bitset kernels assume rows fit in
// a modest number of words.
inline constexpr int kMaxVertices = 4096;

// Dynamic fixed-width bitset over vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

  int universe() const { return n_; }
  void set(int v) { bits_[v >> 6] |= Word{1} << (v & 63); }
  void reset(int v) { bits_[v >> 6] &= ~(Word{1} << (v & 63)); }
  bool test(int v) const { return (bits_[v >> 6] >> (v & 63)) & 1; }

  int count() const {
    int c = 0;
    for (Word w : bits_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (Word w : bits_)
      if (w) return false;
    return true;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  VertexSet& subtract(const VertexSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
    return *this;
  }
  VertexSet complement() const {
    VertexSet r(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
    r.trim();
    return r;
  }

  std::span<const Word> words() const { return bits_; }
  std::span<Word> words() { return bits_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      Word w = bits_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<int>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  static VertexSet of(int n, const std::vector<int>& vs) {
    VertexSet s(n);
    for (int v : vs) s.set(v);
    return s;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  void trim() {
    if (n_ % 64) bits_.back() &= (Word{1} << (n_ % 64)) - 1;
  }
  int n_ = 0;
  std::vector<Word> bits_;
};

struct Bipartition {
  VertexSet left;
  VertexSet right;
  bool operator==(const Bipartition&) const = default;
};

// Undirected simple graph over dense vertex indices 0..n-1, adjacency kept
// as n bit rows. Values are immutable once built by their producer; every
// operation in the library takes Graph by const reference.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(check_order(n)), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  // Bipartite graph with parts 0..m-1 and m..m+n-1.
  static Graph with_parts(int m, int n) {
    Graph g(m + n);
    Bipartition bp;
    bp.left = VertexSet(m + n);
    bp.right = VertexSet(m + n);
    for (int v = 0; v < m; ++v) bp.left.set(v);
    for (int v = m; v < m + n; ++v) bp.right.set(v);
    g.parts_ = std::move(bp);
    return g;
  }

  int order() const { return n_; }
  int row_words() const { return words_; }
  std::size_t edge_count() const { return edges_; }

  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
  }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
    if (has_edge(u, v)) return;
    set_bit(u, v);
    set_bit(v, u);
    ++edges_;
  }

  void remove_edge(int u, int v) {
    if (!has_edge(u, v)) return;
    clear_bit(u, v);
    clear_bit(v, u);
    --edges_;
  }

  int degree(int v) const {
    int d = 0;
    auto r = row(v);
    for (Word w : r) d += std::popcount(w);
    return d;
  }

  int min_degree() const {
    if (n_ == 0) return 0;
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return d;
  }

  std::span<const Word> row(int v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  // Neighbors of v as a VertexSet copy.
  VertexSet neighbors(int v) const {
    VertexSet s(n_);
    auto r = row(v);
    auto w = s.words();
    for (int i = 0; i < words_; ++i) w[i] = r[i];
    return s;
  }

  template <class F>
  void for_neighbors(int v, F&& f) const {
    auto r = row(v);
    for (int i = 0; i < words_; ++i) {
      Word w = r[i];
      while (w) {
        int b = std::countr_zero(w);
        f(i * 64 + b);
        w &= w - 1;
      }
    }
  }

  // Edges as sorted (u,v) pairs with u<v (the canonical writer order).
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges_);
    for (int u = 0; u < n_; ++u)
      for_neighbors(u, [&](int v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  const std::optional<Bipartition>& parts() const { return parts_; }
  void set_parts(Bipartition bp) { parts_ = std::move(bp); }
  void clear_parts() { parts_.reset(); }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && bits_ == o.bits_ && parts_ == o.parts_;
  }

 private:
  static int check_order(int n) {
    if (n < 0 || n > kMaxVertices) throw std::invalid_argument("graph order out of range (max " + std::to_string(kMaxVertices) + ")");
    return n;
  }
  void set_bit(int u, int v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= Word{1} << (v & 63); }
  void clear_bit(int u, int v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(Word{1} << (v & 63)); }

  int n_ = 0;
  int words_ = 0;
  std::size_t edges_ = 0;
  std::vector<Word> bits_;
  std::optional<Bipartition> parts_;
};

// Distance-layer decomposition from a root: layers[i] holds the vertices at
// distance exactly i, balls[i] the union of layers 0..i. Unreachable
// vertices appear in no layer.
struct LayerDecomposition {
  int root = 0;
  std::vector<std::vector<int>> layers;
  std::vector<VertexSet> balls;
};

LayerDecomposition bfs_layers(const Graph& g, int root);

// Shortest-path distances from root; -1 for unreachable.
std::vector<int> bfs_distances(const Graph& g, int root);

// Max over reachable pairs; nullopt iff disconnected (or n<=1 -> 0).
std::optional<int> diameter(const Graph& g);

bool is_connected(const Graph& g);

// Proper 2-coloring if one exists (ignores parts metadata).
std::optional<Bipartition> two_color(const Graph& g);

struct PeelResult {
  Graph subgraph;            // induced on the kept vertices, reindexed
  std::vector<int> kept;     // new index -> original index
  std::vector<int> removed;  // in removal order
};

// Repeatedly removes the lowest-indexed vertex of current degree < d.
PeelResult min_degree_subgraph(const Graph& g, int d);

// Peel within a vertex mask, in host index space: returns the mask of
// surviving vertices (every survivor has >= d neighbors among survivors).
VertexSet peel_mask(const Graph& g, const VertexSet& mask, int d, std::vector<int>* removal_order = nullptr);

// Edge uv present iff 1 <= dist_g(u,v) <= ell.
Graph power_graph(const Graph& g, int ell);

// Induced subgraph on `keep` (host order preserved); keep must be sorted.
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

}  // namespace exg

#endif
