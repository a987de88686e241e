#ifndef DIAMDEG_SMALL_GRAPH_HPP
#define DIAMDEG_SMALL_GRAPH_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace diamdeg {

using VertexMask = std::uint32_t;

inline constexpr int kMaxSmallOrder = 32;

/// Undirected simple graph on at most 32 vertices, one bit row per vertex.
class SmallGraph {
public:
  SmallGraph() = default;

  explicit SmallGraph(int order) : order_(order) {
    if (order < 0 || order > kMaxSmallOrder)
      throw std::invalid_argument("SmallGraph: order must be in [0, 32]");
  }

  SmallGraph(int order, std::initializer_list<std::pair<int, int>> edges) : SmallGraph(order) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int order() const { return order_; }
  VertexMask row(int v) const { return rows_[v]; }
  VertexMask all() const { return order_ == 32 ? ~VertexMask{0} : ((VertexMask{1} << order_) - 1); }

  bool adjacent(int u, int v) const { return (rows_[u] >> v) & 1U; }
  int degree(int v) const { return std::popcount(rows_[v]); }

  void add_edge(int u, int v) {
    check_pair(u, v);
    rows_[u] |= VertexMask{1} << v;
    rows_[v] |= VertexMask{1} << u;
  }

  void remove_edge(int u, int v) {
    check_pair(u, v);
    rows_[u] &= ~(VertexMask{1} << v);
    rows_[v] &= ~(VertexMask{1} << u);
  }

  int edge_count() const {
    int twice = 0;
    for (int v = 0; v < order_; ++v) twice += degree(v);
    return twice / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < order_; ++u)
      for (int v = u + 1; v < order_; ++v)
        if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  /// Appends an isolated vertex and returns its index.
  int add_vertex() {
    if (order_ == kMaxSmallOrder) throw std::length_error("SmallGraph: vertex limit reached");
    return order_++;
  }

  /// Subgraph induced by `mask`, vertices renumbered in increasing order.
  SmallGraph induced(VertexMask mask) const {
    std::array<int, kMaxSmallOrder> index{};
    int n = 0;
    for (int v = 0; v < order_; ++v)
      if ((mask >> v) & 1U) index[v] = n++;
    SmallGraph g(n);
    for (int v = 0; v < order_; ++v) {
      if (!((mask >> v) & 1U)) continue;
      for (VertexMask r = rows_[v] & mask; r; r &= r - 1) {
        const int w = std::countr_zero(r);
        if (w > v) g.add_edge(index[v], index[w]);
      }
    }
    return g;
  }

  /// Relabels so that old vertex perm[i] becomes vertex i.
  SmallGraph permuted(const std::vector<int> &perm) const {
    std::array<int, kMaxSmallOrder> inverse{};
    for (int i = 0; i < order_; ++i) inverse[perm[i]] = i;
    SmallGraph g(order_);
    for (int i = 0; i < order_; ++i)
      for (VertexMask r = rows_[perm[i]]; r; r &= r - 1) g.rows_[i] |= VertexMask{1} << inverse[std::countr_zero(r)];
    return g;
  }

  friend bool operator==(const SmallGraph &a, const SmallGraph &b) {
    if (a.order_ != b.order_) return false;
    return std::equal(a.rows_.begin(), a.rows_.begin() + a.order_, b.rows_.begin());
  }

private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= order_ || v >= order_) throw std::out_of_range("SmallGraph: vertex out of range");
    if (u == v) throw std::invalid_argument("SmallGraph: self-loops are not allowed");
  }

  int order_ = 0;
  std::array<VertexMask, kMaxSmallOrder> rows_{};
};

namespace graphs {

inline SmallGraph complete(int n) {
  SmallGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline SmallGraph empty(int n) { return SmallGraph(n); }

inline SmallGraph path(int n) {
  SmallGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline SmallGraph cycle(int n) {
  SmallGraph g = path(n);
  if (n >= 3) g.add_edge(0, n - 1);
  return g;
}

/// Complete multipartite graph with the given part sizes.
inline SmallGraph complete_multipartite(std::initializer_list<int> parts) {
  std::vector<int> part_of;
  int p = 0;
  for (int size : parts) {
    for (int i = 0; i < size; ++i) part_of.push_back(p);
    ++p;
  }
  SmallGraph g(static_cast<int>(part_of.size()));
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (part_of[u] != part_of[v]) g.add_edge(u, v);
  return g;
}

inline SmallGraph petersen() {
  SmallGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

} // namespace graphs

namespace detail {

// Tomita-style greedy-coloring bound is overkill at n <= 32; plain
// branch and bound on bit rows is fast enough.
inline void clique_expand(const SmallGraph &g, VertexMask candidates, int size, int &best) {
  if (!candidates) {
    best = std::max(best, size);
    return;
  }
  while (candidates) {
    if (size + std::popcount(candidates) <= best) return;
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    clique_expand(g, candidates & g.row(v), size + 1, best);
  }
}

inline bool clique_at_least(const SmallGraph &g, VertexMask candidates, int need) {
  if (need <= 0) return true;
  while (std::popcount(candidates) >= need) {
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    if (clique_at_least(g, candidates & g.row(v), need - 1)) return true;
  }
  return false;
}

} // namespace detail

inline int clique_number(const SmallGraph &g) {
  int best = 0;
  detail::clique_expand(g, g.all(), 0, best);
  return best;
}

/// True iff `mask` contains an edge of `g`.
inline bool has_edge_within(const SmallGraph &g, VertexMask mask) {
  for (VertexMask r = mask; r; r &= r - 1)
    if (g.row(std::countr_zero(r)) & mask) return true;
  return false;
}

inline bool is_k4_free(const SmallGraph &g) { return !detail::clique_at_least(g, g.all(), 4); }

/// True iff the edge uv lies in some K4 of `g` (the edge itself need not be present).
inline bool edge_closes_k4(const SmallGraph &g, int u, int v) {
  return has_edge_within(g, g.row(u) & g.row(v));
}

namespace detail {

inline bool color_extend(const SmallGraph &g, int k, std::vector<int> &color, int colored) {
  if (colored == g.order()) return true;
  // DSATUR pick: uncolored vertex with most distinct neighbor colors.
  int pick = -1, pick_sat = -1, pick_deg = -1;
  for (int v = 0; v < g.order(); ++v) {
    if (color[v] >= 0) continue;
    unsigned seen = 0;
    for (VertexMask r = g.row(v); r; r &= r - 1)
      if (color[std::countr_zero(r)] >= 0) seen |= 1U << color[std::countr_zero(r)];
    const int sat = std::popcount(seen);
    if (sat > pick_sat || (sat == pick_sat && g.degree(v) > pick_deg)) {
      pick = v;
      pick_sat = sat;
      pick_deg = g.degree(v);
    }
  }
  unsigned used = 0;
  for (VertexMask r = g.row(pick); r; r &= r - 1)
    if (color[std::countr_zero(r)] >= 0) used |= 1U << color[std::countr_zero(r)];
  // Colors beyond the largest used one are interchangeable; try only the first fresh one.
  int max_used = -1;
  for (int c : color) max_used = std::max(max_used, c);
  for (int c = 0; c < k && c <= max_used + 1; ++c) {
    if ((used >> c) & 1U) continue;
    color[pick] = c;
    if (color_extend(g, k, color, colored + 1)) return true;
    color[pick] = -1;
  }
  return false;
}

} // namespace detail

/// Exact test for a proper k-coloring (backtracking, n <= 32).
inline bool chromatic_at_most(const SmallGraph &g, int k) {
  if (k < 1) throw std::invalid_argument("chromatic_at_most: k must be >= 1");
  if (g.order() == 0) return true;
  std::vector<int> color(g.order(), -1);
  return detail::color_extend(g, k, color, 0);
}

} // namespace diamdeg

#endif
