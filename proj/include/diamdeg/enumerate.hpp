#ifndef DIAMDEG_ENUMERATE_HPP
#define DIAMDEG_ENUMERATE_HPP

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "canonical.hpp"
#include "small_graph.hpp"

namespace diamdeg {

using GraphFilter = std::function<bool(const SmallGraph &)>;

/// One representative per isomorphism class of graphs on exactly n vertices,
/// grown from the classes on n-1 vertices by adding a vertex with every
/// possible neighborhood. Sorted by canonical key.
///
/// When `hereditary` is set the filter is applied at every order, which is
/// only correct for properties closed under vertex deletion (K4-freeness).
class GraphCatalog {
public:
  explicit GraphCatalog(GraphFilter filter = {}, bool hereditary = false)
      : filter_(std::move(filter)), hereditary_(hereditary) {}

  const std::vector<SmallGraph> &of_order(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("GraphCatalog: order must be in [1, 16]");
    std::lock_guard lock(mutex_);
    return level(n).accepted;
  }

private:
  struct Level {
    std::vector<SmallGraph> grown;
    std::vector<SmallGraph> accepted;
  };

  Level &level(int n) {
    if (auto it = levels_.find(n); it != levels_.end()) return it->second;
    std::map<CanonicalKey, SmallGraph> classes;
    if (n == 1) {
      classes.emplace(canonical_key(SmallGraph(1)), SmallGraph(1));
    } else {
      for (const SmallGraph &parent : level(n - 1).grown) {
        for (VertexMask nbrs = 0; nbrs < (VertexMask{1} << (n - 1)); ++nbrs) {
          SmallGraph child = parent;
          const int v = child.add_vertex();
          for (VertexMask r = nbrs; r; r &= r - 1) child.add_edge(v, std::countr_zero(r));
          if (hereditary_ && filter_ && !filter_(child)) continue;
          auto form = canonical_form(child);
          if (!classes.contains(form.key)) classes.emplace(std::move(form.key), child.permuted(form.order));
        }
      }
    }
    Level lv;
    for (auto &[key, g] : classes) {
      lv.grown.push_back(g);
      if (!filter_ || filter_(g)) lv.accepted.push_back(g);
    }
    return levels_.emplace(n, std::move(lv)).first->second;
  }

  GraphFilter filter_;
  bool hereditary_;
  std::map<int, Level> levels_;
  std::mutex mutex_;
};

/// Representatives of every isomorphism class on 1..n_max vertices that pass
/// `predicate`, ordered by (order, canonical key).
inline std::vector<SmallGraph> enumerate_layer_graphs(int n_max, const GraphFilter &predicate = {}) {
  GraphCatalog catalog;
  std::vector<SmallGraph> out;
  for (int n = 1; n <= n_max; ++n)
    for (const auto &g : catalog.of_order(n))
      if (!predicate || predicate(g)) out.push_back(g);
  return out;
}

} // namespace diamdeg

#endif
