#ifndef DIAMDEG_LAYERED_HPP
#define DIAMDEG_LAYERED_HPP

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"

namespace diamdeg {

/// A graph together with an ordered partition of its vertices into layers.
/// `coloring`, when present, is a proper coloring carried over from a clump
/// expansion and serves as a certificate of colorability.
struct LayeredGraph {
  Graph graph;
  std::vector<std::vector<int>> layers;
  std::optional<std::vector<int>> coloring;

  int layer_count() const { return static_cast<int>(layers.size()); }

  std::vector<int> layer_sizes() const {
    std::vector<int> sizes;
    for (const auto &l : layers) sizes.push_back(static_cast<int>(l.size()));
    return sizes;
  }

  std::vector<int> layer_of() const {
    std::vector<int> index(static_cast<std::size_t>(graph.order()), -1);
    for (int i = 0; i < layer_count(); ++i)
      for (int v : layers[i]) index[v] = i;
    return index;
  }

  /// Induced two-layer graph on layers i and i+1 (vertices of layer i first).
  TwoLayerGraph two_layers(int i) const {
    std::vector<int> verts = layers[i];
    verts.insert(verts.end(), layers[i + 1].begin(), layers[i + 1].end());
    if (verts.size() > static_cast<std::size_t>(kMaxSmallOrder))
      throw GraphError("two-layer window exceeds 32 vertices");
    SmallGraph g(static_cast<int>(verts.size()));
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        if (graph.adjacent(verts[a], verts[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
    return TwoLayerGraph{g, (VertexMask{1} << layers[i].size()) - 1};
  }

  /// Checks the partition covers every vertex once, edges only join equal or
  /// consecutive layers, and each vertex past layer 0 has a neighbor one
  /// layer down. Returns a description of the first violation.
  std::optional<std::string> violation() const {
    const auto index = layer_of();
    std::size_t covered = 0;
    for (const auto &l : layers) covered += l.size();
    if (covered != static_cast<std::size_t>(graph.order())) return "layers do not partition the vertex set";
    for (int v = 0; v < graph.order(); ++v)
      if (index[v] < 0) return "vertex " + std::to_string(v) + " is in no layer";
    for (int v = 0; v < graph.order(); ++v) {
      bool has_parent = index[v] == 0;
      for (int w : graph.neighbors(v)) {
        if (std::abs(index[v] - index[w]) > 1) return "edge " + std::to_string(v) + "-" + std::to_string(w) + " skips a layer";
        has_parent = has_parent || index[w] == index[v] - 1;
      }
      if (!has_parent) return "vertex " + std::to_string(v) + " has no neighbor in the previous layer";
    }
    return std::nullopt;
  }
};

/// Distance layers N_0, N_1, ... from the source set.
inline LayeredGraph bfs_layers(const Graph &g, const std::vector<int> &sources) {
  if (sources.empty()) throw GraphError("bfs_layers: empty source set");
  const auto dist = bfs_distances(g, sources);
  int depth = 0;
  for (int d : dist) {
    if (d < 0) throw GraphError("disconnected");
    depth = std::max(depth, d);
  }
  LayeredGraph out{g, std::vector<std::vector<int>>(static_cast<std::size_t>(depth + 1)), std::nullopt};
  for (int v = 0; v < g.order(); ++v) out.layers[dist[v]].push_back(v);
  return out;
}

} // namespace diamdeg

#endif
