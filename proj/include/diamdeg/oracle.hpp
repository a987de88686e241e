#ifndef DIAMDEG_ORACLE_HPP
#define DIAMDEG_ORACLE_HPP

// Brute-force reference implementations for tests. Nothing here is used by
// the searches, and nothing here calls into them: every routine works on its
// own adjacency matrix built from a plain edge list.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ratio.hpp"

namespace diamdeg::oracle {

using EdgeList = std::vector<std::pair<int, int>>;
using Matrix = std::vector<std::vector<char>>;

struct OracleBudget {
  int max_vertices = 16;
  int max_period = 12;
  int max_column_sum = 6;
  double seconds = 600.0;
};

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Matrix to_matrix(int n, const EdgeList &edges) {
  Matrix m(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (auto [u, v] : edges) {
    if (u == v) continue;
    m[u][v] = m[v][u] = 1;
  }
  return m;
}

/// Largest clique by checking every vertex subset.
inline int naive_clique_number(int n, const EdgeList &edges) {
  if (n > 20) throw BudgetExceeded("naive_clique_number: too many vertices");
  const Matrix m = to_matrix(n, edges);
  int best = 0;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if ((s >> v) & 1U) vs.push_back(v);
    if (static_cast<int>(vs.size()) <= best) continue;
    bool clique = true;
    for (std::size_t i = 0; i < vs.size() && clique; ++i)
      for (std::size_t j = i + 1; j < vs.size() && clique; ++j) clique = m[vs[i]][vs[j]];
    if (clique) best = static_cast<int>(vs.size());
  }
  return best;
}

/// Floyd-Warshall; -1 when the graph is disconnected.
inline int naive_diameter(int n, const EdgeList &edges) {
  if (n > 256) throw BudgetExceeded("naive_diameter: too many vertices");
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : edges)
    if (u != v) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int diam = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (d[i][j] >= kInf) return -1;
      diam = std::max(diam, d[i][j]);
    }
  return diam;
}

/// Every cross-edge set between layer A (vertices 0..n1-1) and layer B
/// (n1..n1+n2-1) whose joint graph is K4-free and to which no further cross
/// edge can be added. Sets are lists of (a, b) with a in A, b in B, both
/// numbered from 0 within their layer. No symmetry reduction.
inline std::vector<EdgeList> naive_maximal_edge_sets(int n1, const EdgeList &e1, int n2, const EdgeList &e2) {
  const int cross = n1 * n2;
  if (cross > 20) throw BudgetExceeded("naive_maximal_edge_sets: too many cross pairs");
  const int n = n1 + n2;
  Matrix base = to_matrix(n, {});
  for (auto [u, v] : e1) base[u][v] = base[v][u] = 1;
  for (auto [u, v] : e2) base[n1 + u][n1 + v] = base[n1 + v][n1 + u] = 1;
  auto k4_free = [&](const Matrix &m) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!m[a][b]) continue;
        for (int c = b + 1; c < n; ++c) {
          if (!m[a][c] || !m[b][c]) continue;
          for (int d = c + 1; d < n; ++d)
            if (m[a][d] && m[b][d] && m[c][d]) return false;
        }
      }
    return true;
  };
  auto with = [&](std::uint32_t set) {
    Matrix m = base;
    for (int i = 0; i < cross; ++i)
      if ((set >> i) & 1U) {
        const int a = i / n2, b = n1 + i % n2;
        m[a][b] = m[b][a] = 1;
      }
    return m;
  };
  std::vector<char> free_set(std::size_t{1} << cross, 0);
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << cross); ++s) free_set[s] = k4_free(with(s));
  std::vector<EdgeList> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << cross); ++s) {
    if (!free_set[s]) continue;
    bool maximal = true;
    for (int i = 0; i < cross && maximal; ++i)
      if (!((s >> i) & 1U) && free_set[s | (std::uint32_t{1} << i)]) maximal = false;
    if (!maximal) continue;
    EdgeList set;
    for (int i = 0; i < cross; ++i)
      if ((s >> i) & 1U) set.emplace_back(i / n2, i % n2);
    out.push_back(std::move(set));
  }
  return out;
}

struct NaiveChiConfig {
  int delta = 4;
  int max_period = 8;
  int max_column_sum = 6;
  int max_class_size = 0; // 0: same as max_column_sum
  bool assume_missing_color = false;
  bool require_singleton_layer = false;
  int colors = 3;
};

/// Best period/order ratio over repeatable clump graphs, by an explicit
/// recursion over concrete column pairs from every start pair (no symmetry
/// quotient, no cycle algorithms). A partial sequence is abandoned only when
/// even unit-size remaining columns could not beat the incumbent.
inline std::optional<Ratio> naive_search_chi(const NaiveChiConfig &cfg, const OracleBudget &budget = {}) {
  if (cfg.max_period > budget.max_period || cfg.max_column_sum > budget.max_column_sum)
    throw BudgetExceeded("naive_search_chi: configuration exceeds the oracle budget");
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(budget.seconds);
  const int k = cfg.colors;
  const int class_cap = cfg.max_class_size > 0 ? cfg.max_class_size : cfg.max_column_sum;

  std::vector<std::vector<int>> cols;
  std::vector<int> col(static_cast<std::size_t>(k), 0);
  auto gen = [&](auto &&self, int pos, int sum) -> void {
    if (pos == k) {
      const int zeros = static_cast<int>(std::count(col.begin(), col.end(), 0));
      if (sum >= 1 && (!cfg.assume_missing_color || zeros > 0)) cols.push_back(col);
      return;
    }
    for (int a = 0; a <= class_cap && sum + a <= cfg.max_column_sum; ++a) {
      col[pos] = a;
      self(self, pos + 1, sum + a);
    }
    col[pos] = 0;
  };
  gen(gen, 0, 0);
  const int nc = static_cast<int>(cols.size());
  std::vector<int> total(nc, 0);
  std::vector<char> single(nc, 0);
  for (int i = 0; i < nc; ++i) {
    int used = 0;
    for (int a : cols[i]) {
      total[i] += a;
      used += a > 0;
    }
    single[i] = used == 1;
  }
  auto find_col = [&](const std::vector<int> &c) {
    return static_cast<int>(std::find(cols.begin(), cols.end(), c) - cols.begin());
  };
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  // permuted[q][c]: column c with row r moved to row perms[q][r]
  std::vector<std::vector<int>> permuted(perms.size(), std::vector<int>(nc));
  for (std::size_t q = 0; q < perms.size(); ++q)
    for (int c = 0; c < nc; ++c) {
      std::vector<int> out(static_cast<std::size_t>(k));
      for (int r = 0; r < k; ++r) out[perms[q][r]] = cols[c][r];
      permuted[q][c] = find_col(out);
    }
  auto middle_ok = [&](int a, int b, int c) {
    for (int r = 0; r < k; ++r) {
      if (cols[b][r] == 0) continue;
      const int deg = (total[a] - cols[a][r]) + (total[b] - cols[b][r]) + (total[c] - cols[c][r]);
      if (deg < cfg.delta) return false;
    }
    return true;
  };

  std::vector<std::vector<int>> successors(static_cast<std::size_t>(nc) * nc);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      for (int c = 0; c < nc; ++c)
        if (middle_ok(a, b, c)) successors[static_cast<std::size_t>(a) * nc + b].push_back(c);

  std::optional<Ratio> best;
  const int C = cfg.max_period;
  const std::size_t states = static_cast<std::size_t>(nc) * nc * 2;
  constexpr int kUnset = 1 << 30;
  std::vector<int> cur(states, kUnset), nxt(states, kUnset);
  auto hopeless = [&](int steps, int weight) {
    if (!best) return false;
    // Final period L in [steps, C] and order at least weight + (L - steps).
    const Ratio bound = std::max(Ratio(steps, weight), Ratio(C, weight + C - steps));
    return bound < *best;
  };
  for (int c0 = 0; c0 < nc; ++c0)
    for (int c1 = 0; c1 < nc; ++c1) {
      bool smallest = true;
      for (std::size_t q = 1; q < perms.size() && smallest; ++q) {
        const std::pair<int, int> other{permuted[q][c0], permuted[q][c1]};
        if (other < std::pair<int, int>{c0, c1}) smallest = false;
      }
      if (!smallest) continue;
      if (std::chrono::steady_clock::now() > deadline) throw BudgetExceeded("naive_search_chi: time limit");
      std::vector<std::pair<int, int>> targets; // (c_L, c_{L+1}) closing the sequence
      for (std::size_t q = 0; q < perms.size(); ++q) targets.emplace_back(permuted[q][c0], permuted[q][c1]);
      std::fill(cur.begin(), cur.end(), kUnset);
      std::vector<std::size_t> live;
      auto index = [&](int a, int b, int f) { return (static_cast<std::size_t>(a) * nc + b) * 2 + f; };
      cur[index(c0, c1, single[c1])] = total[c1];
      live.push_back(index(c0, c1, single[c1]));
      for (int steps = 1; steps <= C && !live.empty(); ++steps) {
        std::vector<std::size_t> next_live;
        for (std::size_t s : live) {
          const int w = cur[s];
          const int f = static_cast<int>(s % 2);
          const int b = static_cast<int>((s / 2) % nc), a = static_cast<int>(s / 2 / nc);
          if (hopeless(steps, w)) continue;
          const bool closable = (f || !cfg.require_singleton_layer) &&
                                std::any_of(targets.begin(), targets.end(), [&](auto t) { return t.first == b; });
          for (int c : successors[static_cast<std::size_t>(a) * nc + b]) {
            if (closable && std::find(targets.begin(), targets.end(), std::pair<int, int>{b, c}) != targets.end()) {
              const Ratio r(steps, w);
              if (!best || r > *best) best = r;
            }
            if (steps == C) continue;
            const std::size_t t = index(b, c, f | single[c]);
            if (nxt[t] == kUnset) next_live.push_back(t);
            nxt[t] = std::min(nxt[t], w + total[c]);
          }
        }
        for (std::size_t s : live) cur[s] = kUnset;
        std::swap(cur, nxt);
        live = std::move(next_live);
      }
      for (std::size_t s : live) cur[s] = kUnset;
    }
  return best;
}

} // namespace diamdeg::oracle

#endif
