#ifndef DIAMDEG_GRAPH_HPP
#define DIAMDEG_GRAPH_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "small_graph.hpp"

namespace diamdeg {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adjacency-list graph of arbitrary order; used for built constructions.
class Graph {
public:
  Graph() = default;
  explicit Graph(int order) : adj_(static_cast<std::size_t>(order)) {}

  static Graph from_small(const SmallGraph &g) {
    Graph out(g.order());
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    return out;
  }

  int order() const { return static_cast<int>(adj_.size()); }
  const std::vector<int> &neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  int add_vertex() {
    adj_.emplace_back();
    return order() - 1;
  }

  /// Adds uv; duplicate edges are ignored.
  void add_edge(int u, int v) {
    if (u == v) throw GraphError("self-loop " + std::to_string(u));
    if (u < 0 || v < 0 || u >= order() || v >= order()) throw GraphError("edge endpoint out of range");
    auto &ru = adj_[u];
    const auto it = std::lower_bound(ru.begin(), ru.end(), v);
    if (it != ru.end() && *it == v) return;
    ru.insert(it, v);
    auto &rv = adj_[v];
    rv.insert(std::lower_bound(rv.begin(), rv.end(), u), u);
  }

  bool adjacent(int u, int v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto &r : adj_) twice += r.size();
    return twice / 2;
  }

  int min_degree() const {
    int best = order() ? degree(0) : 0;
    for (int v = 1; v < order(); ++v) best = std::min(best, degree(v));
    return best;
  }

  SmallGraph to_small() const {
    if (order() > kMaxSmallOrder) throw GraphError("graph too large for SmallGraph");
    SmallGraph g(order());
    for (int u = 0; u < order(); ++u)
      for (int v : adj_[u])
        if (u < v) g.add_edge(u, v);
    return g;
  }

private:
  std::vector<std::vector<int>> adj_;
};

/// Exact K4 test: some edge has an edge inside its common neighborhood.
inline bool is_k4_free(const Graph &g) {
  std::vector<int> common;
  for (int u = 0; u < g.order(); ++u) {
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      common.clear();
      std::set_intersection(g.neighbors(u).begin(), g.neighbors(u).end(), g.neighbors(v).begin(),
                            g.neighbors(v).end(), std::back_inserter(common));
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j)
          if (g.adjacent(common[i], common[j])) return false;
    }
  }
  return true;
}

inline bool is_proper_coloring(const Graph &g, const std::vector<int> &color, int k) {
  if (static_cast<int>(color.size()) != g.order()) return false;
  for (int u = 0; u < g.order(); ++u) {
    if (color[u] < 0 || color[u] >= k) return false;
    for (int v : g.neighbors(u))
      if (color[u] == color[v]) return false;
  }
  return true;
}

namespace detail {

struct Colorer {
  const Graph &g;
  int k;
  std::vector<int> color;
  std::uint64_t budget;

  bool run(int colored) {
    if (colored == g.order()) return true;
    if (budget-- == 0) throw GraphError("coloring search budget exhausted");
    int pick = -1, pick_sat = -1, pick_deg = -1;
    for (int v = 0; v < g.order(); ++v) {
      if (color[v] >= 0) continue;
      unsigned seen = 0;
      for (int w : g.neighbors(v))
        if (color[w] >= 0) seen |= 1U << color[w];
      const int sat = __builtin_popcount(seen);
      if (sat > pick_sat || (sat == pick_sat && g.degree(v) > pick_deg)) {
        pick = v;
        pick_sat = sat;
        pick_deg = g.degree(v);
      }
    }
    unsigned used = 0;
    for (int w : g.neighbors(pick))
      if (color[w] >= 0) used |= 1U << color[w];
    const int max_used = *std::max_element(color.begin(), color.end());
    for (int c = 0; c < k && c <= max_used + 1; ++c) {
      if ((used >> c) & 1U) continue;
      color[pick] = c;
      if (run(colored + 1)) return true;
      color[pick] = -1;
    }
    return false;
  }
};

} // namespace detail

/// Exact DSATUR backtracking for a proper k-coloring (k <= 32). Returns the
/// coloring when one exists. Throws GraphError if `budget` search nodes are
/// exhausted before a decision.
inline std::optional<std::vector<int>> find_coloring(const Graph &g, int k, std::uint64_t budget = 50'000'000) {
  if (k < 1 || k > 32) throw std::invalid_argument("find_coloring: k must be in [1, 32]");
  detail::Colorer c{g, k, std::vector<int>(static_cast<std::size_t>(g.order()), -1), budget};
  if (g.order() == 0 || c.run(0)) return c.color;
  return std::nullopt;
}

/// Distances from a source set; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const Graph &g, const std::vector<int> &sources) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  std::vector<int> queue;
  queue.reserve(g.order());
  for (int s : sources) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : g.neighbors(u))
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

inline int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Diameter by BFS from every vertex; sources are split across `threads`.
inline int diameter(const Graph &g, int threads = 1) {
  if (g.order() == 0) throw GraphError("diameter of the empty graph");
  threads = std::max(1, std::min(threads, g.order()));
  std::atomic<int> next{0};
  std::atomic<int> best{0};
  std::atomic<bool> disconnected{false};
  auto worker = [&] {
    std::vector<int> dist(static_cast<std::size_t>(g.order()));
    std::vector<int> queue(static_cast<std::size_t>(g.order()));
    for (int s = next++; s < g.order() && !disconnected; s = next++) {
      std::fill(dist.begin(), dist.end(), -1);
      std::size_t head = 0, tail = 0;
      dist[s] = 0;
      queue[tail++] = s;
      while (head < tail) {
        const int u = queue[head++];
        for (int v : g.neighbors(u))
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            queue[tail++] = v;
          }
      }
      if (tail != static_cast<std::size_t>(g.order())) {
        disconnected = true;
        return;
      }
      int ecc = dist[queue[tail - 1]];
      int cur = best.load();
      while (ecc > cur && !best.compare_exchange_weak(cur, ecc)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  if (disconnected) throw GraphError("disconnected");
  return best;
}

// ---------------------------------------------------------------------------
// graph6 and edge-list text formats

inline std::string to_graph6(const Graph &g) {
  const std::uint64_t n = static_cast<std::uint64_t>(g.order());
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, bits = 0;
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

inline Graph from_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  auto byte = [&](std::size_t i) -> int {
    if (i >= text.size()) throw GraphError("graph6: truncated input");
    const int c = static_cast<unsigned char>(text[i]) - 63;
    if (c < 0 || c > 63) throw GraphError("graph6: invalid character");
    return c;
  };
  std::size_t pos = 0;
  std::uint64_t n = 0;
  if (text.empty()) throw GraphError("graph6: empty input");
  if (text[0] != 126) {
    n = static_cast<std::uint64_t>(byte(0));
    pos = 1;
  } else if (text.size() > 1 && text[1] != 126) {
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | static_cast<std::uint64_t>(byte(i));
    pos = 4;
  } else {
    for (std::size_t i = 2; i <= 7; ++i) n = (n << 6) | static_cast<std::uint64_t>(byte(i));
    pos = 8;
  }
  Graph g(static_cast<int>(n));
  const std::uint64_t total = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (text.size() != pos + (total + 5) / 6) throw GraphError("graph6: length does not match order");
  std::uint64_t k = 0;
  for (int j = 1; j < static_cast<int>(n); ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int c = byte(pos + k / 6);
      if ((c >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

/// "u v" per line, preceded by a "n <order>" header line.
inline void write_edge_list(std::ostream &os, const Graph &g) {
  os << "n " << g.order() << '\n';
  for (int u = 0; u < g.order(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream &is) {
  std::string line;
  std::vector<std::pair<int, int>> edges;
  int order = -1;
  int max_vertex = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line.rfind("n ", 0) == 0) {
      std::string tag;
      ls >> tag >> order;
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw GraphError("edge list: malformed line '" + line + "'");
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  Graph g(std::max(order, max_vertex + 1));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

} // namespace diamdeg

#endif
