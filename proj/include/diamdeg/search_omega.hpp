#ifndef DIAMDEG_SEARCH_OMEGA_HPP
#define DIAMDEG_SEARCH_OMEGA_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "canonical.hpp"
#include "enumerate.hpp"
#include "layered.hpp"
#include "ratio.hpp"
#include "repeatable.hpp"
#include "search_chi.hpp"
#include "small_graph.hpp"

namespace diamdeg {

/// Normalizations of layer graphs that are known to preserve the optimum for
/// one particular delta. Each flag restricts what the search generates.
struct AssumptionProfile {
  /// delta = 5: a layer of size 4 is a C4, its neighbor layers are
  /// independent and joined to it completely.
  bool size4 = false;
  /// delta = 6: a layer of size 5 is K_{2,3} or C5, its neighbor layers are
  /// independent and joined to it completely.
  bool size5 = false;
  /// delta = 6: layers have at most 5 vertices and |N_{i-1}| + |N_{i+1}| >= 4.
  bool cap5 = false;
  /// delta = 6: two adjacent layers of size 4 are {S4, S4}, {4K1, 4K1} or {4K1, C4}.
  bool adjacent44 = false;

  static AssumptionProfile none() { return {}; }
  static AssumptionProfile for_delta5() { return {true, false, false, false}; }
  static AssumptionProfile for_delta6() { return {false, true, true, true}; }

  /// "none", "delta5", "delta6", or a comma list of size4, size5, cap5, adj44.
  static AssumptionProfile parse(const std::string &text) {
    if (text.empty() || text == "none") return none();
    if (text == "delta5") return for_delta5();
    if (text == "delta6") return for_delta6();
    AssumptionProfile p;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      const std::string flag = text.substr(start, comma - start);
      if (flag == "size4")
        p.size4 = true;
      else if (flag == "size5")
        p.size5 = true;
      else if (flag == "cap5")
        p.cap5 = true;
      else if (flag == "adj44")
        p.adjacent44 = true;
      else
        throw std::invalid_argument("unknown profile flag '" + flag + "'");
      start = comma + 1;
    }
    return p;
  }

  bool any() const { return size4 || size5 || cap5 || adjacent44; }

  std::vector<std::string> flags() const {
    std::vector<std::string> out;
    if (size4) out.emplace_back("size4");
    if (size5) out.emplace_back("size5");
    if (cap5) out.emplace_back("cap5");
    if (adjacent44) out.emplace_back("adj44");
    return out;
  }

  void validate(int delta) const {
    if (size4 && delta != 5) throw std::invalid_argument("profile flag size4 only holds for delta = 5");
    if ((size5 || cap5 || adjacent44) && delta != 6)
      throw std::invalid_argument("profile flags size5, cap5 and adj44 only hold for delta = 6");
  }
};

struct OmegaSearchConfig {
  int delta = 4;
  int max_period = 12;
  /// 0 selects 2 delta.
  int max_layer_size = 0;
  AssumptionProfile profile;
  int threads = 1;
  /// Seed the pruning threshold with the best clump graph; the search is
  /// repeated without it when nothing reaches the seed.
  bool seed_with_clump = true;

  int layer_cap() const {
    int cap = max_layer_size > 0 ? max_layer_size : 2 * delta;
    if (profile.cap5) cap = std::min(cap, 5);
    return cap;
  }

  void validate() const {
    if (delta < 1) throw std::invalid_argument("delta must be positive");
    if (max_period < 1) throw std::invalid_argument("max_period must be positive");
    if (max_layer_size < 0 || max_layer_size > 16) throw std::invalid_argument("max_layer_size must be in [0, 16]");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
    profile.validate(delta);
  }
};

/// A partial layer sequence as the dynamic program sees it.
struct OmegaSearchState {
  CanonicalKey start_interface;
  /// Last two layers with layer labels; fixes the last layer and the degrees
  /// its vertices have so far.
  CanonicalKey last_interface;
  int layer_count = 2;
};

struct OmegaSearchResult {
  std::optional<Ratio> best_ratio;
  std::optional<LayeredGraph> witness;
  int witness_period = 0;
  std::uint64_t states_expanded = 0;
  std::uint64_t interfaces = 0;
  /// Threshold the search was pruned against, if seeded.
  std::optional<Ratio> seed;
};

/// Cross edges between two layers: row[u] is the set of next-layer
/// neighbors of previous-layer vertex u.
using CrossEdges = std::vector<VertexMask>;

namespace detail {

inline SmallGraph joint_graph(const SmallGraph &prev, const SmallGraph &next, const CrossEdges &rows) {
  const int p = prev.order(), q = next.order();
  SmallGraph g(p + q);
  for (auto [u, v] : prev.edges()) g.add_edge(u, v);
  for (auto [u, v] : next.edges()) g.add_edge(p + u, p + v);
  for (int u = 0; u < p; ++u)
    for (VertexMask r = rows[u]; r; r &= r - 1) g.add_edge(u, p + std::countr_zero(r));
  return g;
}

// Backtracking over cross pairs in row-major order. A pair is added when it
// closes no K4; an excluded pair must end up closing one. A branch dies as
// soon as some excluded pair could not close a K4 even if every undecided
// pair were added.
class MaximalEdgeSets {
public:
  MaximalEdgeSets(const SmallGraph &prev, const SmallGraph &next)
      : p_(prev.order()), q_(next.order()), base_(joint_graph(prev, next, CrossEdges(prev.order(), 0))) {
    if (p_ + q_ > kMaxSmallOrder) throw std::invalid_argument("maximal_edge_sets: joint order exceeds 32");
  }

  std::vector<CrossEdges> run() {
    SmallGraph g = base_;
    std::vector<int> excluded;
    recurse(g, 0, excluded);
    return std::move(out_);
  }

private:
  bool closes(const SmallGraph &g, int u, int v) const { return edge_closes_k4(g, u, v); }

  // Graph with every pair from index `from` on added.
  SmallGraph optimistic(const SmallGraph &g, int from) const {
    SmallGraph h = g;
    for (int i = from; i < p_ * q_; ++i) h.add_edge(i / q_, p_ + i % q_);
    return h;
  }

  void recurse(SmallGraph &g, int index, std::vector<int> &excluded) {
    if (index == p_ * q_) {
      for (int e : excluded)
        if (!closes(g, e / q_, p_ + e % q_)) return;
      CrossEdges rows(static_cast<std::size_t>(p_), 0);
      for (int u = 0; u < p_; ++u) rows[u] = g.row(u) >> p_;
      out_.push_back(std::move(rows));
      return;
    }
    const int u = index / q_, v = p_ + index % q_;
    if (!closes(g, u, v)) {
      g.add_edge(u, v);
      recurse(g, index + 1, excluded);
      g.remove_edge(u, v);
    }
    excluded.push_back(index);
    const SmallGraph h = optimistic(g, index + 1);
    bool viable = true;
    for (int e : excluded) viable = viable && closes(h, e / q_, p_ + e % q_);
    if (viable) recurse(g, index + 1, excluded);
    excluded.pop_back();
  }

  int p_, q_;
  SmallGraph base_;
  std::vector<CrossEdges> out_;
};

} // namespace detail

/// Every maximal K4-free cross-edge set between prev and next, without any
/// symmetry reduction.
inline std::vector<CrossEdges> all_maximal_edge_sets(const SmallGraph &prev, const SmallGraph &next) {
  if (!is_k4_free(prev) || !is_k4_free(next)) return {};
  return detail::MaximalEdgeSets(prev, next).run();
}

/// Maximal K4-free cross-edge sets as (prev vertex, next vertex) lists, one
/// per class of joint graphs under isomorphisms that fix both layers.
inline std::vector<std::vector<std::pair<int, int>>> maximal_edge_sets(const SmallGraph &prev, const SmallGraph &next) {
  std::set<CanonicalKey> seen;
  std::vector<std::vector<std::pair<int, int>>> out;
  const VertexMask first = (VertexMask{1} << prev.order()) - 1;
  for (const auto &rows : all_maximal_edge_sets(prev, next)) {
    if (!seen.insert(TwoLayerGraph{detail::joint_graph(prev, next, rows), first}.key()).second) continue;
    std::vector<std::pair<int, int>> set;
    for (int u = 0; u < prev.order(); ++u)
      for (VertexMask r = rows[u]; r; r &= r - 1) set.emplace_back(u, std::countr_zero(r));
    out.push_back(std::move(set));
  }
  return out;
}

} // namespace diamdeg

namespace diamdeg {

namespace detail {

inline const CanonicalKey &shape_key(int which) {
  static const CanonicalKey keys[] = {
      canonical_key(graphs::cycle(4)),
      canonical_key(graphs::cycle(5)),
      canonical_key(graphs::complete_multipartite({2, 3})),
      canonical_key(graphs::complete_multipartite({1, 3})),
  };
  return keys[which];
}
inline bool is_c4(const SmallGraph &g) { return g.order() == 4 && canonical_key(g) == shape_key(0); }
inline bool is_c5(const SmallGraph &g) { return g.order() == 5 && canonical_key(g) == shape_key(1); }
inline bool is_k23(const SmallGraph &g) { return g.order() == 5 && canonical_key(g) == shape_key(2); }
inline bool is_star4(const SmallGraph &g) { return g.order() == 4 && canonical_key(g) == shape_key(3); }

inline bool layer_allowed(const SmallGraph &g, const AssumptionProfile &p) {
  if (p.size4 && g.order() == 4 && !is_c4(g)) return false;
  if (p.size5 && g.order() == 5 && !is_k23(g) && !is_c5(g)) return false;
  if (p.cap5 && g.order() > 5) return false;
  return true;
}

// Graph-level part of the profile rules for consecutive layers x, y.
// Sets `complete` when the cross edges must be all pairs.
inline bool pair_allowed(const SmallGraph &x, const SmallGraph &y, const AssumptionProfile &p, bool &complete) {
  complete = false;
  auto big = [&](int size, bool flag) {
    if (!flag) return true;
    if (x.order() == size) {
      if (y.edge_count() > 0) return false;
      complete = true;
    }
    if (y.order() == size) {
      if (x.edge_count() > 0) return false;
      complete = true;
    }
    return true;
  };
  if (!big(4, p.size4) || !big(5, p.size5)) return false;
  if (p.adjacent44 && x.order() == 4 && y.order() == 4) {
    const bool xs = is_star4(x), ys = is_star4(y);
    const bool xe = x.edge_count() == 0, ye = y.edge_count() == 0;
    const bool ok = (xs && ys) || (xe && ye) || (xe && is_c4(y)) || (ye && is_c4(x));
    if (!ok) return false;
  }
  return true;
}

class OmegaEngine {
public:
  explicit OmegaEngine(const OmegaSearchConfig &cfg)
      : cfg_(cfg), cap_(cfg.layer_cap()), catalog_([](const SmallGraph &g) { return is_k4_free(g); }, true) {
    layers_.resize(static_cast<std::size_t>(cap_) + 1);
  }

  OmegaSearchResult run(std::optional<Ratio> seed) {
    OmegaSearchResult result;
    result.seed = seed;
    threshold_ = seed;
    auto found = search_all();
    if (!found && seed) {
      // Nothing reached the seed: repeat unseeded.
      threshold_.reset();
      found = search_all();
    }
    result.states_expanded = expanded_;
    result.interfaces = nodes_.size();
    if (!found) return result;
    result.best_ratio = found->ratio;
    result.witness_period = found->period;
    result.witness = rebuild(*found);
    return result;
  }

private:
  struct Transition {
    int target;
    int layer;      // index into layers_[size]
    CrossEdges rows; // per vertex of the source's last layer, in representative order
  };

  struct Node {
    SmallGraph joint; // canonical order: first layer, then last layer
    int a = 0, b = 0;
    CanonicalKey key;
    SmallGraph last;
    std::vector<int> last_degree;
    CanonicalKey last_key;
    std::vector<int> last_order; // canonical position -> vertex of `last`
    std::map<int, std::unique_ptr<std::vector<Transition>>> out;
  };

  struct Candidate {
    Ratio ratio;
    int period = 0;
    int root = 0;
    std::vector<std::pair<int, int>> steps; // (layer size, transition index)
  };

  bool node_less(int u, int v) const {
    const Node &x = *nodes_[u], &y = *nodes_[v];
    if (x.a + x.b != y.a + y.b) return x.a + x.b < y.a + y.b;
    return x.key < y.key;
  }

  static std::vector<int> layer_labels(int a, int b) {
    std::vector<int> labels(static_cast<std::size_t>(a + b), 1);
    std::fill(labels.begin(), labels.begin() + a, 0);
    return labels;
  }

  // Node for a two-layer joint graph (first layer = vertices 0..a-1).
  int intern(const SmallGraph &joint, int a, std::vector<int> *order_out = nullptr) {
    const int b = joint.order() - a;
    auto form = canonical_form(joint, layer_labels(a, b));
    if (order_out) *order_out = form.order;
    if (auto it = index_.find(form.key.bytes); it != index_.end()) return it->second;
    auto node = std::make_unique<Node>();
    node->joint = joint.permuted(form.order);
    node->a = a;
    node->b = b;
    node->key = form.key;
    VertexMask last_mask = ((VertexMask{1} << b) - 1) << a;
    node->last = node->joint.induced(last_mask);
    for (int j = 0; j < b; ++j) node->last_degree.push_back(node->joint.degree(a + j));
    auto last_form = canonical_form(node->last);
    node->last_key = last_form.key;
    node->last_order = last_form.order;
    const int id = static_cast<int>(nodes_.size());
    index_.emplace(form.key.bytes, id);
    nodes_.push_back(std::move(node));
    return id;
  }

  const std::vector<CrossEdges> &sets_for(const Node &u, int size, int layer) {
    std::string key = u.last_key.bytes;
    key += '#';
    key += std::to_string(size) + ":" + std::to_string(layer);
    auto it = sets_.find(key);
    if (it != sets_.end()) return it->second;
    const SmallGraph canon = u.last.permuted(u.last_order);
    return sets_.emplace(key, all_maximal_edge_sets(canon, layers(size)[layer])).first->second;
  }

  const std::vector<Transition> &transitions(int id, int size) {
    std::lock_guard lock(mutex_);
    Node &u = *nodes_[id];
    if (auto it = u.out.find(size); it != u.out.end()) return *it->second;
    auto list = std::make_unique<std::vector<Transition>>();
    const bool size_ok = !cfg_.profile.cap5 || u.a + size >= 4;
    const int b = u.b;
    int weakest = std::numeric_limits<int>::max();
    for (int d : u.last_degree) weakest = std::min(weakest, d);
    std::set<int> targets;
    for (int idx = 0; size_ok && weakest + size >= cfg_.delta && idx < static_cast<int>(layers(size).size()); ++idx) {
      const SmallGraph &next = layers(size)[idx];
      bool complete = false;
      if (!pair_allowed(u.last, next, cfg_.profile, complete)) continue;
      std::vector<CrossEdges> candidates;
      if (complete) {
        CrossEdges rows(static_cast<std::size_t>(b), next.all());
        if (is_k4_free(joint_graph(u.last, next, rows))) candidates.push_back(std::move(rows));
      } else {
        for (const auto &canon_rows : sets_for(u, size, idx)) {
          CrossEdges rows(static_cast<std::size_t>(b), 0);
          for (int i = 0; i < b; ++i) rows[u.last_order[i]] = canon_rows[i];
          candidates.push_back(std::move(rows));
        }
      }
      for (auto &rows : candidates) {
        VertexMask covered = 0;
        bool degrees = true;
        for (int j = 0; j < b; ++j) {
          covered |= rows[j];
          degrees = degrees && u.last_degree[j] + std::popcount(rows[j]) >= cfg_.delta;
        }
        if (!degrees || covered != next.all()) continue;
        const int target = intern(joint_graph(u.last, next, rows), b);
        if (!targets.insert(target).second) continue;
        list->push_back(Transition{target, idx, std::move(rows)});
      }
    }
    return *u.out.emplace(size, std::move(list)).first->second;
  }

  // Least total size of r more layers leading from last sizes (x, y) to the
  // root sizes (a0, b0), using |N_{j-1}| + |N_j| + |N_{j+1}| >= delta + 1.
  struct Bounds {
    int a0, b0;
    std::vector<std::vector<std::vector<int>>> close; // [r][x][y]
  };

  static constexpr int kInf = 1 << 28;

  Bounds make_bounds(int a0, int b0) const {
    Bounds bd{a0, b0, {}};
    const int C = cfg_.max_period;
    bd.close.assign(static_cast<std::size_t>(C) + 1,
                    std::vector<std::vector<int>>(static_cast<std::size_t>(cap_) + 1, std::vector<int>(static_cast<std::size_t>(cap_) + 1, kInf)));
    auto step_ok = [&](int x, int y, int z) {
      if (x + y + z < cfg_.delta + 1) return false;
      return !cfg_.profile.cap5 || x + z >= 4;
    };
    for (int x = 1; x <= cap_; ++x)
      if (step_ok(x, a0, b0)) bd.close[1][x][a0] = b0;
    for (int r = 2; r <= C; ++r)
      for (int x = 1; x <= cap_; ++x)
        for (int y = 1; y <= cap_; ++y)
          for (int z = 1; z <= cap_; ++z) {
            if (!step_ok(x, y, z) || y + z < a0 + b0) continue;
            const int rest = bd.close[r - 1][y][z];
            if (rest < kInf) bd.close[r][x][y] = std::min(bd.close[r][x][y], z + rest);
          }
    return bd;
  }

  std::optional<Ratio> current_threshold() {
    std::lock_guard lock(best_mutex_);
    return threshold_;
  }

  // After `steps` transitions with total size `weight` and last sizes (x, y),
  // can a closed walk of ratio >= threshold still follow?
  bool promising(const Bounds &bd, int steps, int weight, int x, int y, const std::optional<Ratio> &thr) const {
    for (int r = 1; steps + r <= cfg_.max_period; ++r) {
      const int rest = bd.close[r][x][y];
      if (rest >= kInf) continue;
      if (!thr || Ratio(steps + r, weight + rest) >= *thr) return true;
    }
    return false;
  }

  std::optional<Candidate> run_root(int root, std::uint64_t &expanded) {
    const Node &r = *nodes_[root];
    const Bounds bd = make_bounds(r.a, r.b);
    struct Entry {
      int node, weight, parent, size, trans;
    };
    std::vector<std::vector<Entry>> levels(1);
    levels[0].push_back(Entry{root, 0, -1, 0, -1});
    std::optional<Candidate> best;
    auto thr = current_threshold();
    if (!promising(bd, 0, 0, r.a, r.b, thr)) return std::nullopt;
    for (int step = 1; step <= cfg_.max_period && !levels.back().empty(); ++step) {
      thr = current_threshold();
      const auto &here = levels[step - 1];
      std::vector<Entry> next;
      std::unordered_map<int, int> slot;
      std::optional<std::pair<int, int>> closing; // (entry index in here, size) giving least weight
      int closing_weight = kInf, closing_trans = -1;
      for (int i = 0; i < static_cast<int>(here.size()); ++i) {
        ++expanded;
        const Entry e = here[i];
        const int b = nodes_[e.node]->b;
        for (int size = 1; size <= cap_; ++size) {
          const int w = e.weight + size;
          const bool can_close = b == r.a && size == r.b;
          const bool can_continue = step < cfg_.max_period && promising(bd, step, w, b, size, thr);
          if (!can_close && !can_continue) continue;
          const auto &list = transitions(e.node, size);
          for (int t = 0; t < static_cast<int>(list.size()); ++t) {
            const int v = list[t].target;
            if (v == root) {
              if (w < closing_weight) {
                closing_weight = w;
                closing = {i, size};
                closing_trans = t;
              }
              continue;
            }
            if (!can_continue || !node_less(root, v)) continue;
            auto [it, fresh] = slot.emplace(v, static_cast<int>(next.size()));
            if (fresh)
              next.push_back(Entry{v, w, i, size, t});
            else if (w < next[it->second].weight)
              next[it->second] = Entry{v, w, i, size, t};
          }
        }
      }
      if (closing) {
        const Ratio ratio(step, closing_weight);
        if ((!best || ratio > best->ratio) && (!thr || ratio >= *thr)) {
          Candidate c{ratio, step, root, {}};
          c.steps.emplace_back(closing->second, closing_trans);
          for (int lvl = step - 1, idx = closing->first; lvl >= 1; --lvl) {
            const Entry &e = levels[lvl][idx];
            c.steps.emplace_back(e.size, e.trans);
            idx = e.parent;
          }
          std::reverse(c.steps.begin(), c.steps.end());
          best = std::move(c);
          std::lock_guard lock(best_mutex_);
          if (!threshold_ || ratio > *threshold_) threshold_ = ratio;
        }
      }
      levels.push_back(std::move(next));
    }
    return best;
  }

  // Interfaces that may start a closed walk: both layers allowed, maximal
  // cross edges, every vertex of the second layer attached to the first.
  std::vector<int> roots_up_to(int max_sum) {
    std::vector<int> out;
    std::set<int> seen;
    for (int sum = 2; sum <= max_sum; ++sum)
      for (int a = 1; a < sum; ++a) {
        const int b = sum - a;
        if (a > cap_ || b > cap_) continue;
        for (const auto &x : layers(a))
          for (const auto &y : layers(b)) {
            bool complete = false;
            if (!pair_allowed(x, y, cfg_.profile, complete)) continue;
            std::vector<CrossEdges> sets;
            if (complete) {
              CrossEdges rows(static_cast<std::size_t>(a), y.all());
              if (is_k4_free(joint_graph(x, y, rows))) sets.push_back(rows);
            } else {
              sets = all_maximal_edge_sets(x, y);
            }
            for (const auto &rows : sets) {
              VertexMask covered = 0;
              for (VertexMask row : rows) covered |= row;
              if (covered != y.all()) continue;
              std::lock_guard lock(mutex_);
              const int id = intern(joint_graph(x, y, rows), a);
              if (seen.insert(id).second) out.push_back(id);
            }
          }
      }
    std::sort(out.begin(), out.end(), [&](int u, int v) { return node_less(u, v); });
    return out;
  }

  static bool better(const Candidate &x, const Candidate &y) {
    if (x.ratio != y.ratio) return x.ratio > y.ratio;
    return x.period < y.period;
  }

  std::optional<Candidate> search_all() {
    auto thr = current_threshold();
    // The smallest interface of a closed walk with ratio >= thr has at most
    // 2 / thr vertices.
    const int max_sum = thr ? static_cast<int>((2 * thr->den()) / thr->num()) : 2 * cap_;
    const auto roots = roots_up_to(std::min(max_sum, 2 * cap_));
    std::vector<std::optional<Candidate>> per_root(roots.size());
    std::vector<std::uint64_t> counts(roots.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < roots.size(); i = next++) {
        const Node &r = *nodes_[roots[i]];
        const auto t = current_threshold();
        if (t && Ratio(2, r.a + r.b) < *t) continue;
        per_root[i] = run_root(roots[i], counts[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < cfg_.threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    std::optional<Candidate> best;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      expanded_ += counts[i];
      if (per_root[i] && (!best || better(*per_root[i], *best))) best = per_root[i];
    }
    return best;
  }

  LayeredGraph rebuild(const Candidate &c) {
    const Node &root = *nodes_[c.root];
    LayeredGraph g{Graph::from_small(root.joint), {}, std::nullopt};
    g.layers.emplace_back();
    g.layers.emplace_back();
    for (int v = 0; v < root.a + root.b; ++v) g.layers[v < root.a ? 0 : 1].push_back(v);
    // actual[i]: graph vertex at position i of the current node's representative
    std::vector<int> actual(static_cast<std::size_t>(root.a + root.b));
    for (int v = 0; v < root.a + root.b; ++v) actual[v] = v;
    int cur = c.root;
    for (auto [size, t] : c.steps) {
      const Node &u = *nodes_[cur];
      const Transition &tr = (*u.out.at(size))[t];
      const SmallGraph &next = layers(size)[tr.layer];
      std::vector<int> local; // local joint vertex -> graph vertex
      for (int j = 0; j < u.b; ++j) local.push_back(actual[u.a + j]);
      g.layers.emplace_back();
      for (int k = 0; k < size; ++k) {
        const int v = g.graph.add_vertex();
        local.push_back(v);
        g.layers.back().push_back(v);
      }
      for (auto [x, y] : next.edges()) g.graph.add_edge(local[u.b + x], local[u.b + y]);
      for (int j = 0; j < u.b; ++j)
        for (VertexMask r = tr.rows[j]; r; r &= r - 1) g.graph.add_edge(local[j], local[u.b + std::countr_zero(r)]);
      std::vector<int> order;
      const int target = intern(joint_graph(u.last, next, tr.rows), u.b, &order);
      actual.assign(order.size(), -1);
      for (std::size_t i = 0; i < order.size(); ++i) actual[i] = local[order[i]];
      cur = target;
    }
    return g;
  }

  // Allowed layer graphs of one order, enumerated on first use.
  const std::vector<SmallGraph> &layers(int n) {
    std::lock_guard lock(layers_mutex_);
    auto &slot = layers_[n];
    if (!slot) {
      slot = std::make_unique<std::vector<SmallGraph>>();
      for (const auto &g : catalog_.of_order(n))
        if (layer_allowed(g, cfg_.profile)) slot->push_back(g);
    }
    return *slot;
  }

  OmegaSearchConfig cfg_;
  int cap_;
  GraphCatalog catalog_;
  std::vector<std::unique_ptr<std::vector<SmallGraph>>> layers_;
  std::mutex layers_mutex_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::string, std::vector<CrossEdges>> sets_;
  std::mutex mutex_;
  std::mutex best_mutex_;
  std::optional<Ratio> threshold_;
  std::uint64_t expanded_ = 0;
};

} // namespace detail

/// Best repetition-length-to-order ratio over K4-free repeatable graphs with
/// repetition length at most cfg.max_period and layers of at most
/// cfg.layer_cap() vertices.
///
/// A state is the two-layer graph on the last two layers, which determines
/// every later constraint; a repeatable graph is a closed walk of states.
/// Each closed walk is searched from its smallest state (by total size, then
/// key), keeping the least order per (steps, state), and partial walks are
/// dropped when the window bound |N_{j-1}| + |N_j| + |N_{j+1}| >= delta + 1
/// shows they cannot reach the best ratio found so far.
inline OmegaSearchResult search_omega(const OmegaSearchConfig &cfg) {
  cfg.validate();
  std::optional<Ratio> seed;
  if (cfg.seed_with_clump) {
    ChiSearchConfig chi;
    chi.delta = cfg.delta;
    chi.max_period = cfg.max_period;
    chi.max_column_sum = cfg.layer_cap();
    chi.threads = cfg.threads;
    seed = search_chi(chi).best_ratio;
  }
  detail::OmegaEngine engine(cfg);
  return engine.run(seed);
}

} // namespace diamdeg

#endif
