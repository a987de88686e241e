#ifndef DIAMDEG_SEARCH_CHI_HPP
#define DIAMDEG_SEARCH_CHI_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "clump.hpp"
#include "ratio.hpp"

namespace diamdeg {

enum class ChiStrategy {
  /// Unbounded optimum first, bounded dynamic program only when needed.
  Auto,
  /// Always the bounded dynamic program.
  DynamicProgram,
};

struct ChiSearchConfig {
  int delta = 4;
  /// Largest repetition length considered (the period bound C).
  int max_period = 20;
  /// 0 selects floor(3 delta / 2).
  int max_column_sum = 0;
  /// 0 selects max_column_sum.
  int max_class_size = 0;
  /// Every layer misses at least one color: c(i) <= chi - 1.
  bool assume_missing_color = false;
  /// Some layer of the block uses a single color.
  bool require_singleton_layer = false;
  int chi = 3;
  int threads = 1;
  ChiStrategy strategy = ChiStrategy::Auto;

  int column_sum_cap() const { return max_column_sum > 0 ? max_column_sum : (3 * delta) / 2; }
  int class_size_cap() const { return max_class_size > 0 ? max_class_size : column_sum_cap(); }

  /// True when the result depends on an unproven assumption or cap.
  bool conditional() const { return assume_missing_color || require_singleton_layer; }

  void validate() const {
    if (delta < 1) throw std::invalid_argument("delta must be positive");
    if (max_period < 1) throw std::invalid_argument("max_period must be positive");
    if (max_column_sum < 0 || max_class_size < 0) throw std::invalid_argument("caps must be non-negative");
    if (chi < 2 || chi > 4) throw std::invalid_argument("chi must be in [2, 4]");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
  }
};

struct ChiSearchResult {
  std::optional<Ratio> best_ratio;
  /// Block-mode witness; seam permutations are unrolled so the block wraps
  /// with the identity.
  std::optional<ClumpMatrix> witness;
  /// Repetition length of the repeatable graph found (before unrolling).
  int witness_period = 0;
  ColorPermutation seam;
  std::uint64_t states_expanded = 0;
};

/// A partial column sequence as seen by the dynamic program.
struct ChiSearchState {
  ClumpColumn start0, start1;
  ClumpColumn prev, last;
  int layer_count = 2;
  int order = 0;

  /// Starts a sequence with the pair rotated to its lexicographically
  /// smallest row permutation.
  static ChiSearchState start(const ClumpColumn &c0, const ClumpColumn &c1) {
    if (c0.size() != c1.size()) throw std::invalid_argument("columns of different height");
    ColorPermutation pi = ColorPermutation::identity(static_cast<int>(c0.size()));
    std::pair<ClumpColumn, ClumpColumn> best{c0, c1};
    do {
      std::pair<ClumpColumn, ClumpColumn> cand{pi.apply(c0), pi.apply(c1)};
      if (cand < best) best = cand;
    } while (std::next_permutation(pi.perm.begin(), pi.perm.end()));
    const int order = std::accumulate(c0.begin(), c0.end(), 0) + std::accumulate(c1.begin(), c1.end(), 0);
    return ChiSearchState{best.first, best.second, best.first, best.second, 2, order};
  }
};

namespace detail {

inline int column_total(const ClumpColumn &c) { return std::accumulate(c.begin(), c.end(), 0); }

/// Every occupied class of `mid` reaches delta with `before` and `after` as neighbors.
inline bool middle_column_ok(const ClumpColumn &before, const ClumpColumn &mid, const ClumpColumn &after, int delta) {
  const int sb = column_total(before), sm = column_total(mid), sa = column_total(after);
  for (std::size_t c = 0; c < mid.size(); ++c)
    if (mid[c] > 0 && (sb - before[c]) + (sm - mid[c]) + (sa - after[c]) < delta) return false;
  return true;
}

inline bool column_allowed(const ClumpColumn &col, const ChiSearchConfig &cfg) {
  if (static_cast<int>(col.size()) != cfg.chi) return false;
  int sum = 0, zeros = 0;
  for (int a : col) {
    if (a < 0 || a > cfg.class_size_cap()) return false;
    sum += a;
    zeros += a == 0;
  }
  if (sum < 1 || sum > cfg.column_sum_cap()) return false;
  return !cfg.assume_missing_color || zeros > 0;
}

} // namespace detail

/// Appends `next` if the current last column then meets the degree bound.
inline std::optional<ChiSearchState> extend_column(const ChiSearchState &state, const ClumpColumn &next,
                                                   const ChiSearchConfig &cfg) {
  if (!detail::column_allowed(next, cfg)) return std::nullopt;
  if (!detail::middle_column_ok(state.prev, state.last, next, cfg.delta)) return std::nullopt;
  ChiSearchState out = state;
  out.prev = state.last;
  out.last = next;
  out.layer_count += 1;
  out.order += detail::column_total(next);
  return out;
}

/// Permutation pi with (prev, last) = pi(start pair), if any.
inline std::optional<ColorPermutation> detect_repeatable(const ChiSearchState &state) {
  if (state.layer_count < 3) return std::nullopt;
  ColorPermutation pi = ColorPermutation::identity(static_cast<int>(state.start0.size()));
  do {
    if (pi.apply(state.start0) == state.prev && pi.apply(state.start1) == state.last) return pi;
  } while (std::next_permutation(pi.perm.begin(), pi.perm.end()));
  return std::nullopt;
}

namespace detail {

/// Column alphabet, row permutations and the quotient graph on column pairs
/// taken up to simultaneous row permutation.
class ChiPairGraph {
public:
  struct Edge {
    int column; // appended column, in the orientation of the source representative
    int target; // node of (b, column)
    int perm;   // sends (b, column) to the target representative
  };

  explicit ChiPairGraph(const ChiSearchConfig &cfg) : cfg_(cfg) {
    build_columns();
    build_perms();
    build_nodes();
    build_edges();
  }

  int column_count() const { return static_cast<int>(columns_.size()); }
  int node_count() const { return static_cast<int>(node_rep_.size()); }
  const ClumpColumn &column(int c) const { return columns_[c]; }
  int column_sum(int c) const { return sums_[c]; }
  bool singleton(int c) const { return single_color_[c]; }
  std::pair<int, int> rep(int node) const { return node_rep_[node]; }
  const std::vector<Edge> &edges(int node) const { return edges_[node]; }
  int perm_count() const { return static_cast<int>(perms_.size()); }
  const ColorPermutation &perm(int p) const { return perms_[p]; }
  int apply(int p, int column) const { return perm_col_[p][column]; }
  int compose(int first, int then) const { return compose_[first][then]; }
  int inverse(int p) const { return inverse_[p]; }
  int identity() const { return 0; }

private:
  void build_columns() {
    const int cap = cfg_.class_size_cap();
    ClumpColumn col(static_cast<std::size_t>(cfg_.chi), 0);
    // Odometer over [0, cap]^chi, most significant entry first, so the
    // index order is the lexicographic order of the vectors.
    while (true) {
      if (column_allowed(col, cfg_)) {
        index_.emplace(col, static_cast<int>(columns_.size()));
        columns_.push_back(col);
        sums_.push_back(column_total(col));
        single_color_.push_back(std::count_if(col.begin(), col.end(), [](int a) { return a > 0; }) == 1);
      }
      int pos = cfg_.chi - 1;
      while (pos >= 0 && col[pos] == cap) col[pos--] = 0;
      if (pos < 0) break;
      ++col[pos];
    }
  }

  void build_perms() {
    ColorPermutation pi = ColorPermutation::identity(cfg_.chi);
    do perms_.push_back(pi);
    while (std::next_permutation(pi.perm.begin(), pi.perm.end()));
    for (const auto &p : perms_) {
      std::vector<int> map;
      map.reserve(columns_.size());
      for (const auto &c : columns_) map.push_back(index_.at(p.apply(c)));
      perm_col_.push_back(std::move(map));
    }
    const int np = static_cast<int>(perms_.size());
    compose_.assign(np, std::vector<int>(np));
    inverse_.assign(np, 0);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b) {
        const auto c = perms_[a].then(perms_[b]);
        const int idx = static_cast<int>(std::find(perms_.begin(), perms_.end(), c) - perms_.begin());
        compose_[a][b] = idx;
        if (idx == 0) inverse_[a] = b;
      }
  }

  void build_nodes() {
    const int k = column_count();
    pair_node_.assign(static_cast<std::size_t>(k) * k, -1);
    pair_perm_.assign(static_cast<std::size_t>(k) * k, 0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        if (pair_node_[a * k + b] >= 0) continue;
        std::pair<int, int> best{a, b};
        for (int p = 1; p < perm_count(); ++p) best = std::max(best, std::pair<int, int>{perm_col_[p][a], perm_col_[p][b]});
        const int node = node_count();
        node_rep_.push_back(best);
        for (int p = 0; p < perm_count(); ++p) {
          const int pa = perm_col_[p][best.first], pb = perm_col_[p][best.second];
          if (pair_node_[pa * k + pb] < 0) {
            pair_node_[pa * k + pb] = node;
            pair_perm_[pa * k + pb] = inverse_[p];
          }
        }
      }
  }

  void build_edges() {
    const int k = column_count();
    edges_.resize(node_rep_.size());
    for (int node = 0; node < node_count(); ++node) {
      const auto [a, b] = node_rep_[node];
      for (int c = 0; c < k; ++c) {
        if (!middle_column_ok(columns_[a], columns_[b], columns_[c], cfg_.delta)) continue;
        edges_[node].push_back(Edge{c, pair_node_[b * k + c], pair_perm_[b * k + c]});
      }
    }
  }

  ChiSearchConfig cfg_;
  std::vector<ClumpColumn> columns_;
  std::map<ClumpColumn, int> index_;
  std::vector<int> sums_;
  std::vector<bool> single_color_;
  std::vector<ColorPermutation> perms_;
  std::vector<std::vector<int>> perm_col_;
  std::vector<std::vector<int>> compose_;
  std::vector<int> inverse_;
  std::vector<int> pair_node_;
  std::vector<int> pair_perm_;
  std::vector<std::pair<int, int>> node_rep_;
  std::vector<std::vector<Edge>> edges_;
};

struct ChiCandidate {
  Ratio ratio;
  int period = 0;
  int seam_order = 1;
  std::vector<int> serial; // canonical column-index sequence of the unrolled block
  std::vector<int> block;  // lifted block columns (indices), one period
  int seam = 0;            // permutation index: last pair = seam(start pair)

  /// Better ratio, then shorter period, then identity-like seam, then smaller serialization.
  bool better_than(const ChiCandidate &o) const {
    if (ratio != o.ratio) return ratio > o.ratio;
    if (period != o.period) return period < o.period;
    if (seam_order != o.seam_order) return seam_order < o.seam_order;
    return serial < o.serial;
  }
};

/// Turns a closed walk in the pair graph into a concrete block.
class ChiLifter {
public:
  explicit ChiLifter(const ChiPairGraph &g) : g_(g) {}

  /// nodes[i] is the node before appending rep_columns[i]; nodes[0] is the start.
  ChiCandidate lift(const std::vector<int> &nodes, const std::vector<int> &rep_columns) const {
    const int steps = static_cast<int>(rep_columns.size());
    int tau = g_.identity(); // sends the actual orientation to the current representative
    ChiCandidate out{Ratio(0), steps, 1, {}, {}, 0};
    int weight = 0;
    for (int step = 0; step < steps; ++step) {
      const int rep_col = rep_columns[step];
      out.block.push_back(g_.apply(g_.inverse(tau), rep_col));
      weight += g_.column_sum(rep_col);
      for (const auto &e : g_.edges(nodes[step]))
        if (e.column == rep_col) {
          tau = g_.compose(tau, e.perm);
          break;
        }
    }
    out.ratio = Ratio(steps, weight);
    out.seam = g_.inverse(tau);
    const auto cols = unrolled(out.block, out.seam);
    out.seam_order = static_cast<int>(cols.size()) / steps;
    out.serial = canonical_serial(cols);
    return out;
  }

  std::vector<int> unrolled(const std::vector<int> &block, int seam) const {
    std::vector<int> out;
    int acc = g_.identity();
    do {
      for (int c : block) out.push_back(g_.apply(acc, c));
      acc = g_.compose(acc, seam);
    } while (acc != g_.identity());
    return out;
  }

  std::vector<int> canonical_serial(const std::vector<int> &cols) const {
    std::vector<int> best;
    const std::size_t len = cols.size();
    for (int p = 0; p < g_.perm_count(); ++p)
      for (std::size_t r = 0; r < len; ++r) {
        std::vector<int> cand(len);
        for (std::size_t i = 0; i < len; ++i) cand[i] = g_.apply(p, cols[(r + i) % len]);
        if (best.empty() || cand < best) best = std::move(cand);
      }
    return best;
  }

private:
  const ChiPairGraph &g_;
};

/// Bounded dynamic program: for every root node, least block order per
/// (steps, node, singleton-seen) over walks that stay on nodes >= root.
/// Every closed walk is found from its smallest node.
class ChiDpSearcher {
public:
  ChiDpSearcher(const ChiSearchConfig &cfg, const ChiPairGraph &graph) : cfg_(cfg), g_(graph), lifter_(graph) {
    reverse_.resize(g_.node_count());
    for (int u = 0; u < g_.node_count(); ++u)
      for (const auto &e : g_.edges(u))
        if (reverse_[e.target].empty() || reverse_[e.target].back() != u) reverse_[e.target].push_back(u);
  }

  std::optional<ChiCandidate> run_root(int root, std::uint64_t &expanded) const {
    const int period_cap = cfg_.max_period;
    const auto back = distances_back(root);
    if (back[root] < 0) return std::nullopt;
    std::vector<std::vector<Entry>> levels(1);
    levels[0].push_back(Entry{2 * root, 0, -1, -1});
    std::vector<int> slot(static_cast<std::size_t>(2 * g_.node_count()), -1);
    std::optional<std::pair<int, int>> best; // (steps, entry index)
    std::optional<Ratio> best_ratio;
    for (int step = 1; step <= period_cap && !levels.back().empty(); ++step) {
      const auto &here = levels[step - 1];
      std::vector<Entry> next;
      for (int i = 0; i < static_cast<int>(here.size()); ++i) {
        ++expanded;
        const int node = here[i].state / 2, flag = here[i].state % 2;
        for (const auto &e : g_.edges(node)) {
          if (e.target < root) continue;
          const int remaining = e.target == root ? 0 : back[e.target];
          if (remaining < 0 || remaining > period_cap - step) continue;
          const int t = 2 * e.target + (flag | (g_.singleton(e.column) ? 1 : 0));
          const int w = here[i].weight + g_.column_sum(e.column);
          if (slot[t] < 0) {
            slot[t] = static_cast<int>(next.size());
            next.push_back(Entry{t, w, i, e.column});
          } else if (w < next[slot[t]].weight) {
            next[slot[t]] = Entry{t, w, i, e.column};
          }
        }
      }
      for (int flag = cfg_.require_singleton_layer ? 1 : 0; flag <= 1; ++flag) {
        const int idx = slot[2 * root + flag];
        if (idx < 0) continue;
        const Ratio r(step, next[idx].weight);
        if (!best_ratio || r > *best_ratio) {
          best_ratio = r;
          best = {step, idx};
        }
      }
      for (const auto &entry : next) slot[entry.state] = -1;
      levels.push_back(std::move(next));
    }
    if (!best) return std::nullopt;
    auto [steps, index] = *best;
    std::vector<int> rep_columns(steps), nodes(steps);
    for (int step = steps; step >= 1; --step) {
      const Entry &e = levels[step][index];
      rep_columns[step - 1] = e.column;
      index = e.parent;
      nodes[step - 1] = levels[step - 1][index].state / 2;
    }
    return lifter_.lift(nodes, rep_columns);
  }

private:
  struct Entry {
    int state;  // 2 * node + singleton-seen flag
    int weight; // block order so far
    int parent; // index in the previous level
    int column; // appended column, representative orientation of the parent node
  };

  // Fewest steps from each node back to root inside nodes >= root; -1 when
  // unreachable. back[root] is the shortest cycle length through root.
  std::vector<int> distances_back(int root) const {
    std::vector<int> dist(static_cast<std::size_t>(g_.node_count()), -1);
    std::vector<int> queue{root};
    dist[root] = 0;
    int cycle = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      if (dist[v] >= cfg_.max_period) continue;
      for (int u : reverse_[v]) {
        if (u < root) continue;
        if (u == root && cycle < 0) cycle = dist[v] + 1;
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    dist[root] = cycle;
    return dist;
  }

  const ChiSearchConfig &cfg_;
  const ChiPairGraph &g_;
  ChiLifter lifter_;
  std::vector<std::vector<int>> reverse_;
};

/// Exact optimum over all closed walks (no length bound), found by cycle
/// ratio improvement inside the strongly connected components. The optimal
/// cycles are then exactly the cycles of zero reduced cost.
class ChiCycleSolver {
public:
  ChiCycleSolver(const ChiSearchConfig &cfg, const ChiPairGraph &graph) : cfg_(cfg), g_(graph), lifter_(graph) {}

  /// Best candidate among optimal cycles of length <= max_period, or empty
  /// when the unbounded optimum is not attained within the bound.
  std::optional<ChiCandidate> solve(std::uint64_t &expanded, bool &has_cycle) const {
    const auto comp = components();
    const auto best = optimum_by_cancelling(comp, expanded);
    has_cycle = best.has_value();
    if (!best) return std::nullopt;
    const auto tight = tight_edges(*best, comp, expanded);
    return shortest_tight_cycle(tight, expanded);
  }

private:
  // Tarjan's algorithm, iterative. comp[v] = component id, or -1 when v
  // lies on no cycle.
  std::vector<int> components() const {
    const int n = g_.node_count();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (index[s] >= 0) continue;
      call.emplace_back(s, 0);
      while (!call.empty()) {
        auto &[v, pos] = call.back();
        if (pos == 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
        }
        const auto &edges = g_.edges(v);
        bool descended = false;
        while (pos < edges.size()) {
          const int w = edges[pos++].target;
          if (index[w] < 0) {
            call.emplace_back(w, 0);
            descended = true;
            break;
          }
          if (on_stack[w]) low[v] = std::min(low[v], index[w]);
        }
        if (descended) continue;
        const int done = v;
        if (low[done] == index[done]) {
          std::vector<int> members;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            members.push_back(w);
          } while (w != done);
          bool cyclic = members.size() > 1;
          if (!cyclic)
            for (const auto &e : g_.edges(done)) cyclic = cyclic || e.target == done;
          for (int m : members) comp[m] = cyclic ? ncomp : -1;
          if (cyclic) ++ncomp;
        }
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
    return comp;
  }

  // Ratio improvement: with the best ratio so far as lambda, Bellman-Ford
  // passes under cost(e) = num * colsum - den either settle (lambda is
  // optimal) or close a cycle of parent pointers, whose ratio is strictly
  // better. Starts from lambda = 0, where every cycle qualifies.
  std::optional<Ratio> optimum_by_cancelling(const std::vector<int> &comp, std::uint64_t &expanded) const {
    const int n = g_.node_count();
    std::vector<int> nodes;
    for (int v = 0; v < n; ++v)
      if (comp[v] >= 0) nodes.push_back(v);
    std::optional<Ratio> best;
    std::int64_t num = 0, den = 1;
    std::vector<std::int64_t> pot(n, 0);
    std::vector<int> parent(n, -1), parent_col(n, -1), mark(n, -1);
    while (!nodes.empty()) {
      std::fill(parent.begin(), parent.end(), -1);
      bool improved = false;
      while (!improved) {
        bool changed = false;
        for (int u : nodes) {
          ++expanded;
          for (const auto &e : g_.edges(u)) {
            if (comp[e.target] != comp[u]) continue;
            const std::int64_t c = num * g_.column_sum(e.column) - den;
            if (pot[u] + c < pot[e.target]) {
              pot[e.target] = pot[u] + c;
              parent[e.target] = u;
              parent_col[e.target] = e.column;
              changed = true;
            }
          }
        }
        if (!changed) return best;
        std::fill(mark.begin(), mark.end(), -1);
        for (int s : nodes) {
          int v = s;
          while (v >= 0 && mark[v] < 0) {
            mark[v] = s;
            v = parent[v];
          }
          if (v < 0 || mark[v] != s) continue;
          int steps = 0, weight = 0, w = v;
          do {
            ++steps;
            weight += g_.column_sum(parent_col[w]);
            w = parent[w];
          } while (w != v);
          best = Ratio(steps, weight);
          num = best->num();
          den = best->den();
          improved = true;
          break;
        }
      }
    }
    return best;
  }

  // Edges of zero reduced cost under cost(e) = num * colsum - den, with
  // potentials from Bellman-Ford (no negative cycles exist at the optimum).
  std::vector<std::vector<ChiPairGraph::Edge>> tight_edges(const Ratio &best, const std::vector<int> &comp,
                                                          std::uint64_t &expanded) const {
    const int n = g_.node_count();
    const std::int64_t num = best.num(), den = best.den();
    auto cost = [&](const ChiPairGraph::Edge &e) { return num * g_.column_sum(e.column) - den; };
    std::vector<std::int64_t> pot(n, 0);
    std::vector<int> queue;
    std::vector<bool> queued(n, false);
    for (int v = 0; v < n; ++v)
      if (comp[v] >= 0) {
        queue.push_back(v);
        queued[v] = true;
      }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      queued[u] = false;
      ++expanded;
      for (const auto &e : g_.edges(u)) {
        if (comp[e.target] != comp[u]) continue;
        if (pot[u] + cost(e) < pot[e.target]) {
          pot[e.target] = pot[u] + cost(e);
          if (!queued[e.target]) {
            queued[e.target] = true;
            queue.push_back(e.target);
          }
        }
      }
    }
    std::vector<std::vector<ChiPairGraph::Edge>> tight(n);
    for (int u = 0; u < n; ++u) {
      if (comp[u] < 0) continue;
      for (const auto &e : g_.edges(u))
        if (comp[e.target] == comp[u] && pot[u] + cost(e) == pot[e.target]) tight[u].push_back(e);
    }
    return tight;
  }

  std::optional<ChiCandidate> shortest_tight_cycle(const std::vector<std::vector<ChiPairGraph::Edge>> &tight,
                                                   std::uint64_t &expanded) const {
    const int n = g_.node_count();
    const bool need_single = cfg_.require_singleton_layer;
    // BFS over (node, singleton-seen) states from every root, restricted to
    // nodes >= root, gives the shortest qualifying cycle length.
    int shortest = -1;
    std::vector<int> dist(2 * static_cast<std::size_t>(n), -1);
    std::vector<int> queue;
    for (int root = 0; root < n; ++root) {
      if (tight[root].empty()) continue;
      queue.assign(1, 2 * root);
      dist[2 * root] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int s = queue[head];
        const int d = dist[s];
        if (shortest >= 0 && d + 1 >= shortest + 1) break;
        ++expanded;
        for (const auto &e : tight[s / 2]) {
          if (e.target < root) continue;
          const int flag = (s % 2) | (g_.singleton(e.column) ? 1 : 0);
          if (e.target == root && (flag || !need_single)) {
            if (shortest < 0 || d + 1 < shortest) shortest = d + 1;
          }
          const int t = 2 * e.target + flag;
          if (dist[t] < 0) {
            dist[t] = d + 1;
            queue.push_back(t);
          }
        }
      }
      for (int s : queue) dist[s] = -1;
    }
    if (shortest < 0 || shortest > cfg_.max_period) return std::nullopt;
    // Enumerate the cycles of that length, each from its smallest node.
    std::optional<ChiCandidate> best;
    std::vector<int> nodes, columns;
    std::vector<bool> on_path(n, false);
    std::uint64_t budget = 1'000'000;
    auto dfs = [&](auto &&self, int root, int v, bool single) -> void {
      if (budget == 0) return;
      const int depth = static_cast<int>(columns.size());
      for (const auto &e : tight[v]) {
        if (e.target < root) continue;
        const bool s2 = single || g_.singleton(e.column);
        if (e.target == root) {
          if (depth + 1 == shortest && (s2 || !need_single)) {
            --budget;
            nodes.push_back(v);
            columns.push_back(e.column);
            auto cand = lifter_.lift(nodes, columns);
            if (!best || cand.better_than(*best)) best = std::move(cand);
            nodes.pop_back();
            columns.pop_back();
          }
          continue;
        }
        if (depth + 1 >= shortest || on_path[e.target]) continue;
        on_path[e.target] = true;
        nodes.push_back(v);
        columns.push_back(e.column);
        self(self, root, e.target, s2);
        nodes.pop_back();
        columns.pop_back();
        on_path[e.target] = false;
      }
    };
    for (int root = 0; root < n && budget > 0; ++root) {
      if (tight[root].empty()) continue;
      ++expanded;
      on_path[root] = true;
      dfs(dfs, root, root, false);
      on_path[root] = false;
    }
    return best;
  }

  const ChiSearchConfig &cfg_;
  const ChiPairGraph &g_;
  ChiLifter lifter_;
};

inline ChiSearchResult finish(const ChiSearchConfig &cfg, const ChiPairGraph &graph,
                              const std::optional<ChiCandidate> &best, std::uint64_t expanded) {
  ChiSearchResult result;
  result.states_expanded = expanded;
  result.seam = ColorPermutation::identity(cfg.chi);
  if (!best) return result;
  result.best_ratio = best->ratio;
  result.witness_period = best->period;
  result.seam = graph.perm(best->seam);
  std::vector<ClumpColumn> cols;
  for (int c : best->serial) cols.push_back(graph.column(c));
  result.witness = ClumpMatrix(cfg.chi, std::move(cols), ClumpMode::Block);
  return result;
}

inline ChiSearchResult search_chi_dp(const ChiSearchConfig &cfg, const ChiPairGraph &graph) {
  const ChiDpSearcher searcher(cfg, graph);
  const int n = graph.node_count();
  std::vector<std::optional<ChiCandidate>> per_root(n);
  std::vector<std::uint64_t> expanded(n, 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int root = next++; root < n; root = next++) per_root[root] = searcher.run_root(root, expanded[root]);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(cfg.threads, std::max(n, 1)); ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  std::uint64_t total = 0;
  const ChiCandidate *best = nullptr;
  for (int root = 0; root < n; ++root) {
    total += expanded[root];
    if (per_root[root] && (!best || per_root[root]->better_than(*best))) best = &*per_root[root];
  }
  return finish(cfg, graph, best ? std::optional<ChiCandidate>(*best) : std::nullopt, total);
}

} // namespace detail

/// Best repetition-length-to-order ratio over repeatable clump graphs with
/// repetition length at most cfg.max_period.
///
/// Column pairs up to row permutation form a graph in which a repeatable
/// clump graph is exactly a closed walk; its length is the period and its
/// column sums add up to the block order. The default strategy first solves
/// the unbounded problem as a minimum mean cycle and accepts it when an
/// optimal cycle fits the period bound; otherwise (or when asked to) it runs
/// the bounded dynamic program keeping the least order per
/// (steps, pair, singleton-seen) state.
inline ChiSearchResult search_chi(const ChiSearchConfig &cfg) {
  cfg.validate();
  const detail::ChiPairGraph graph(cfg);
  if (cfg.strategy == ChiStrategy::Auto) {
    std::uint64_t expanded = 0;
    bool has_cycle = false;
    const detail::ChiCycleSolver solver(cfg, graph);
    auto best = solver.solve(expanded, has_cycle);
    if (best || !has_cycle) return detail::finish(cfg, graph, best, expanded);
    auto fallback = detail::search_chi_dp(cfg, graph);
    fallback.states_expanded += expanded;
    return fallback;
  }
  return detail::search_chi_dp(cfg, graph);
}

} // namespace diamdeg

#endif
