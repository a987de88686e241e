#ifndef DIAMDEG_REPEATABLE_HPP
#define DIAMDEG_REPEATABLE_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "graph.hpp"
#include "layered.hpp"

namespace diamdeg {

enum class ConstraintMode { Omega, Chi };

inline const char *mode_name(ConstraintMode m) { return m == ConstraintMode::Omega ? "omega" : "chi"; }

inline ConstraintMode parse_mode(const std::string &s) {
  if (s == "omega") return ConstraintMode::Omega;
  if (s == "chi") return ConstraintMode::Chi;
  throw std::invalid_argument("mode must be omega or chi, got '" + s + "'");
}

/// Smallest degree over vertices outside the first and last layer, or -1
/// when there are none.
inline int interior_min_degree(const LayeredGraph &g) {
  int best = -1;
  for (int i = 1; i + 1 < g.layer_count(); ++i)
    for (int v : g.layers[i])
      if (best < 0 || g.graph.degree(v) < best) best = g.graph.degree(v);
  return best;
}

/// Satisfies the constraint: K4-free, or 3-colorable. A carried coloring is
/// accepted as a certificate; otherwise colorability is decided by search.
inline bool satisfies_mode(const LayeredGraph &g, ConstraintMode mode) {
  if (mode == ConstraintMode::Omega) return is_k4_free(g.graph);
  if (g.coloring && is_proper_coloring(g.graph, *g.coloring, 3)) return true;
  return find_coloring(g.graph, 3).has_value();
}

/// First reason g is not repeatable for delta, if any.
inline std::optional<std::string> repeatable_violation(const LayeredGraph &g, int delta,
                                                       ConstraintMode mode = ConstraintMode::Omega) {
  if (g.layer_count() < 3) return "fewer than three layers";
  if (auto v = g.violation()) return v;
  for (int i = 1; i + 1 < g.layer_count(); ++i)
    for (int v : g.layers[i])
      if (g.graph.degree(v) < delta)
        return "vertex " + std::to_string(v) + " in layer " + std::to_string(i) + " has degree " +
               std::to_string(g.graph.degree(v));
  if (!satisfies_mode(g, mode)) return mode == ConstraintMode::Omega ? "contains K4" : "not 3-colorable";
  if (!layered_isomorphic(g.two_layers(0), g.two_layers(g.layer_count() - 2)))
    return "first two layers differ from last two layers";
  return std::nullopt;
}

inline bool verify_repeatable(const LayeredGraph &g, int delta, ConstraintMode mode = ConstraintMode::Omega) {
  return !repeatable_violation(g, delta, mode).has_value();
}

/// graph6 on the first line, then "layers" followed by each vertex's layer.
inline void write_layered(std::ostream &os, const LayeredGraph &g) {
  os << to_graph6(g.graph) << "\nlayers";
  for (int l : g.layer_of()) os << ' ' << l;
  os << '\n';
}

inline std::string layered_to_string(const LayeredGraph &g) {
  std::ostringstream os;
  write_layered(os, g);
  return os.str();
}

inline LayeredGraph read_layered(std::istream &is) {
  std::string g6, line;
  if (!std::getline(is, g6)) throw GraphError("layered graph: missing graph6 line");
  LayeredGraph out{from_graph6(g6), {}, std::nullopt};
  if (!std::getline(is, line)) throw GraphError("layered graph: missing layers line");
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  if (word != "layers") throw GraphError("layered graph: expected 'layers'");
  int l = 0, v = 0;
  while (ls >> l) {
    if (l < 0 || v >= out.graph.order()) throw GraphError("layered graph: bad layer entry");
    if (l >= out.layer_count()) out.layers.resize(static_cast<std::size_t>(l) + 1);
    out.layers[l].push_back(v++);
  }
  if (v != out.graph.order()) throw GraphError("layered graph: one layer index per vertex required");
  for (const auto &layer : out.layers)
    if (layer.empty()) throw GraphError("layered graph: empty layer");
  return out;
}

} // namespace diamdeg

#endif
