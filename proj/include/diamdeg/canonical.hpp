#ifndef DIAMDEG_CANONICAL_HPP
#define DIAMDEG_CANONICAL_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "small_graph.hpp"

namespace diamdeg {

/// Byte encoding of a vertex-labeled graph in canonical order. Two labeled
/// graphs are isomorphic (labels preserved) iff their keys compare equal.
struct CanonicalKey {
  std::string bytes;

  friend bool operator==(const CanonicalKey &, const CanonicalKey &) = default;
  friend std::strong_ordering operator<=>(const CanonicalKey &a, const CanonicalKey &b) {
    return a.bytes <=> b.bytes;
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey &k) const { return std::hash<std::string>{}(k.bytes); }
};

struct CanonicalForm {
  CanonicalKey key;
  /// order[i] is the input vertex placed at canonical position i.
  std::vector<int> order;
};

namespace detail {

class Canonizer {
public:
  Canonizer(const SmallGraph &g, const std::vector<int> &labels) : g_(g), labels_(labels), n_(g.order()) {}

  CanonicalForm run() {
    std::vector<int> vertices(n_);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::stable_sort(vertices.begin(), vertices.end(), [&](int a, int b) {
      if (labels_[a] != labels_[b]) return labels_[a] < labels_[b];
      return g_.degree(a) < g_.degree(b);
    });
    Partition p;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const int v = vertices[i];
      if (i == 0 || labels_[v] != labels_[vertices[i - 1]] || g_.degree(v) != g_.degree(vertices[i - 1]))
        p.emplace_back();
      p.back().push_back(v);
    }
    refine(p);
    std::vector<int> fixed;
    search(p, fixed);
    return CanonicalForm{encode(best_order_), best_order_};
  }

private:
  using Partition = std::vector<std::vector<int>>;

  // Split cells by neighbor counts into each splitter cell until equitable.
  void refine(Partition &p) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < p.size() && !changed; ++s) {
        VertexMask splitter = 0;
        for (int v : p[s]) splitter |= VertexMask{1} << v;
        for (std::size_t c = 0; c < p.size(); ++c) {
          if (p[c].size() == 1) continue;
          auto count = [&](int v) { return std::popcount(g_.row(v) & splitter); };
          const int first = count(p[c].front());
          bool uniform = true;
          for (int v : p[c]) uniform = uniform && count(v) == first;
          if (uniform) continue;
          std::vector<int> cell = p[c];
          std::stable_sort(cell.begin(), cell.end(), [&](int a, int b) { return count(a) < count(b); });
          Partition pieces;
          for (std::size_t i = 0; i < cell.size(); ++i) {
            if (i == 0 || count(cell[i]) != count(cell[i - 1])) pieces.emplace_back();
            pieces.back().push_back(cell[i]);
          }
          p.erase(p.begin() + static_cast<std::ptrdiff_t>(c));
          p.insert(p.begin() + static_cast<std::ptrdiff_t>(c), pieces.begin(), pieces.end());
          changed = true;
          break;
        }
      }
    }
  }

  std::vector<VertexMask> code_of(const std::vector<int> &order) const {
    std::vector<int> pos(n_);
    for (int i = 0; i < n_; ++i) pos[order[i]] = i;
    std::vector<VertexMask> rows(n_);
    for (int i = 0; i < n_; ++i)
      for (VertexMask r = g_.row(order[i]); r; r &= r - 1) rows[i] |= VertexMask{1} << pos[std::countr_zero(r)];
    return rows;
  }

  CanonicalKey encode(const std::vector<int> &order) const {
    CanonicalKey key;
    key.bytes.push_back(static_cast<char>(n_));
    for (int i = 0; i < n_; ++i) {
      const auto l = static_cast<std::uint32_t>(labels_[order[i]]);
      for (int b = 3; b >= 0; --b) key.bytes.push_back(static_cast<char>((l >> (8 * b)) & 0xFF));
    }
    for (VertexMask row : code_of(order))
      for (int b = 3; b >= 0; --b) key.bytes.push_back(static_cast<char>((row >> (8 * b)) & 0xFF));
    return key;
  }

  void search(const Partition &p, std::vector<int> &fixed) {
    std::size_t target = p.size();
    for (std::size_t c = 0; c < p.size(); ++c)
      if (p[c].size() > 1) {
        target = c;
        break;
      }
    if (target == p.size()) {
      std::vector<int> order;
      order.reserve(n_);
      for (const auto &cell : p) order.push_back(cell.front());
      leaf(order);
      return;
    }
    std::vector<int> explored;
    for (int v : p[target]) {
      if (in_explored_orbit(v, explored, fixed)) continue;
      explored.push_back(v);
      Partition child = p;
      auto &cell = child[target];
      cell.erase(std::find(cell.begin(), cell.end(), v));
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(target), std::vector<int>{v});
      refine(child);
      fixed.push_back(v);
      search(child, fixed);
      fixed.pop_back();
    }
  }

  void leaf(const std::vector<int> &order) {
    auto code = code_of(order);
    if (best_order_.empty() || code < best_code_) {
      best_code_ = std::move(code);
      best_order_ = order;
    } else if (code == best_code_) {
      std::vector<int> automorphism(n_);
      for (int i = 0; i < n_; ++i) automorphism[best_order_[i]] = order[i];
      automorphisms_.push_back(std::move(automorphism));
    }
  }

  // Orbit of v under the automorphisms found so far that fix `fixed` pointwise.
  bool in_explored_orbit(int v, const std::vector<int> &explored, const std::vector<int> &fixed) const {
    if (explored.empty() || automorphisms_.empty()) return false;
    std::vector<const std::vector<int> *> usable;
    for (const auto &a : automorphisms_) {
      bool ok = true;
      for (int f : fixed) ok = ok && a[f] == f;
      if (ok) usable.push_back(&a);
    }
    if (usable.empty()) return false;
    VertexMask orbit = VertexMask{1} << v;
    bool grew = true;
    while (grew) {
      grew = false;
      for (VertexMask r = orbit; r; r &= r - 1) {
        const int x = std::countr_zero(r);
        for (const auto *a : usable) {
          const VertexMask bit = VertexMask{1} << (*a)[x];
          if (!(orbit & bit)) {
            orbit |= bit;
            grew = true;
          }
        }
      }
    }
    for (int e : explored)
      if ((orbit >> e) & 1U) return true;
    return false;
  }

  const SmallGraph &g_;
  const std::vector<int> &labels_;
  int n_;
  std::vector<int> best_order_;
  std::vector<VertexMask> best_code_;
  std::vector<std::vector<int>> automorphisms_;
};

} // namespace detail

/// Canonical form by equitable refinement seeded with (label, degree),
/// completed by individualization with automorphism-orbit pruning.
inline CanonicalForm canonical_form(const SmallGraph &g, const std::vector<int> &labels) {
  if (static_cast<int>(labels.size()) != g.order())
    throw std::invalid_argument("canonical_form: one label per vertex required");
  if (g.order() == 0) return CanonicalForm{CanonicalKey{std::string(1, '\0')}, {}};
  return detail::Canonizer(g, labels).run();
}

inline CanonicalForm canonical_form(const SmallGraph &g) {
  return canonical_form(g, std::vector<int>(static_cast<std::size_t>(g.order()), 0));
}

inline CanonicalKey canonical_key(const SmallGraph &g, const std::vector<int> &labels) {
  return canonical_form(g, labels).key;
}

inline CanonicalKey canonical_key(const SmallGraph &g) { return canonical_form(g).key; }

/// Two-layer graph: `joint` on |A|+|B| vertices where vertices in `first`
/// form layer A and the rest form layer B.
struct TwoLayerGraph {
  SmallGraph joint;
  VertexMask first = 0;

  std::vector<int> layer_labels() const {
    std::vector<int> labels(static_cast<std::size_t>(joint.order()));
    for (int v = 0; v < joint.order(); ++v) labels[v] = ((first >> v) & 1U) ? 0 : 1;
    return labels;
  }

  CanonicalKey key() const { return canonical_key(joint, layer_labels()); }
};

/// True iff an isomorphism maps layer A onto layer A' and B onto B'.
inline bool layered_isomorphic(const TwoLayerGraph &a, const TwoLayerGraph &b) {
  if (a.joint.order() != b.joint.order()) return false;
  if (std::popcount(a.first) != std::popcount(b.first)) return false;
  return a.key() == b.key();
}

/// An isomorphism from a to b respecting the layers: map[v] is the image of
/// joint vertex v of a.
inline std::optional<std::vector<int>> layered_isomorphism(const TwoLayerGraph &a, const TwoLayerGraph &b) {
  if (a.joint.order() != b.joint.order() || std::popcount(a.first) != std::popcount(b.first)) return std::nullopt;
  const auto fa = canonical_form(a.joint, a.layer_labels());
  const auto fb = canonical_form(b.joint, b.layer_labels());
  if (fa.key != fb.key) return std::nullopt;
  std::vector<int> map(static_cast<std::size_t>(a.joint.order()));
  for (std::size_t i = 0; i < fa.order.size(); ++i) map[fa.order[i]] = fb.order[i];
  return map;
}

} // namespace diamdeg

#endif
