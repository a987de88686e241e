#ifndef DIAMDEG_BUILDER_HPP
#define DIAMDEG_BUILDER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "canonical.hpp"
#include "clump.hpp"
#include "graph.hpp"
#include "layered.hpp"
#include "ratio.hpp"
#include "repeatable.hpp"

namespace diamdeg {

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionSpec {
  /// A clump matrix (block or repeatable mode) or an explicit repeatable graph.
  std::variant<ClumpMatrix, LayeredGraph> block;
  int repetitions = 1;
  int delta = 4;
  bool cap_ends = false;
  /// Constraint checked on explicit blocks.
  ConstraintMode mode = ConstraintMode::Omega;
};

namespace detail {

// Appends a copy of base minus its first two layers to cur, joining the last
// layer of cur to the copy the way base joins N_1 to N_2.
inline LayeredGraph glue_period(const LayeredGraph &cur, const LayeredGraph &base) {
  const int last = cur.layer_count() - 1;
  const auto phi = layered_isomorphism(base.two_layers(0), cur.two_layers(last - 1));
  if (!phi) throw BuildError("interfaces of the blocks do not match");
  std::vector<int> window = cur.layers[last - 1];
  window.insert(window.end(), cur.layers[last].begin(), cur.layers[last].end());
  std::vector<int> base_pos(static_cast<std::size_t>(base.graph.order()), -1);
  int pos = 0;
  for (int v : base.layers[0]) base_pos[v] = pos++;
  for (int v : base.layers[1]) base_pos[v] = pos++;

  LayeredGraph out{cur.graph, cur.layers, std::nullopt};
  std::vector<int> copy(static_cast<std::size_t>(base.graph.order()), -1);
  for (int i = 2; i < base.layer_count(); ++i) {
    out.layers.emplace_back();
    for (int v : base.layers[i]) {
      copy[v] = out.graph.add_vertex();
      out.layers.back().push_back(copy[v]);
    }
  }
  for (int v = 0; v < base.graph.order(); ++v) {
    for (int w : base.graph.neighbors(v)) {
      if (copy[v] >= 0 && copy[w] >= 0) {
        out.graph.add_edge(copy[v], copy[w]);
      } else if (copy[w] >= 0 && base_pos[v] >= static_cast<int>(base.layers[0].size())) {
        out.graph.add_edge(window[(*phi)[base_pos[v]]], copy[w]);
      }
    }
  }
  return out;
}

// Splits a boundary layer into two parts, each inducing a triangle-free
// graph. With a 3-coloring, color 1 forms the second part.
inline std::pair<std::vector<int>, std::vector<int>> split_boundary(const LayeredGraph &g, const std::vector<int> &layer) {
  std::vector<int> x, y;
  if (g.coloring) {
    for (int v : layer) ((*g.coloring)[v] == 1 ? y : x).push_back(v);
    return {x, y};
  }
  const int n = static_cast<int>(layer.size());
  if (n > 20) throw BuildError("boundary layer too large to split");
  auto triangle_free = [&](const std::vector<int> &part) {
    for (std::size_t a = 0; a < part.size(); ++a)
      for (std::size_t b = a + 1; b < part.size(); ++b) {
        if (!g.graph.adjacent(part[a], part[b])) continue;
        for (std::size_t c = b + 1; c < part.size(); ++c)
          if (g.graph.adjacent(part[a], part[c]) && g.graph.adjacent(part[b], part[c])) return false;
      }
    return true;
  };
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    x.clear();
    y.clear();
    for (int i = 0; i < n; ++i) (((mask >> i) & 1U) ? y : x).push_back(layer[i]);
    if (triangle_free(x) && triangle_free(y)) return {x, y};
  }
  throw BuildError("boundary layer cannot be split into two triangle-free parts");
}

} // namespace detail

/// Attaches a separate K_{delta,delta} to the first and to the last layer.
/// Each boundary vertex is joined to all of one side: the boundary layer is
/// split into two triangle-free parts (by color when a coloring is carried)
/// and the parts go to opposite sides, which keeps the result K4-free and,
/// for colored graphs, 3-colorable.
inline LayeredGraph cap_ends(const LayeredGraph &g, int delta) {
  if (delta < 1) throw BuildError("delta must be positive");
  if (g.layer_count() == 0) throw BuildError("cannot cap an empty graph");
  LayeredGraph out{g.graph, {}, g.coloring};
  auto add_cap = [&](const std::vector<int> &boundary) {
    const auto [x, y] = detail::split_boundary(g, boundary);
    std::vector<int> side_a, side_b;
    for (int i = 0; i < delta; ++i) side_a.push_back(out.graph.add_vertex());
    for (int i = 0; i < delta; ++i) side_b.push_back(out.graph.add_vertex());
    for (int a : side_a)
      for (int b : side_b) out.graph.add_edge(a, b);
    for (int v : x)
      for (int a : side_a) out.graph.add_edge(v, a);
    for (int v : y)
      for (int b : side_b) out.graph.add_edge(v, b);
    if (out.coloring) {
      out.coloring->resize(static_cast<std::size_t>(out.graph.order()));
      for (int a : side_a) (*out.coloring)[a] = 1;
      for (int b : side_b) (*out.coloring)[b] = 0;
    }
    std::vector<int> cap = side_a;
    cap.insert(cap.end(), side_b.begin(), side_b.end());
    return cap;
  };
  out.layers.push_back(add_cap(g.layers.front()));
  out.layers.insert(out.layers.end(), g.layers.begin(), g.layers.end());
  if (g.layer_count() > 1) out.layers.push_back(add_cap(g.layers.back()));
  return out;
}

/// Repeatable graph made of `repetitions` periods of the block.
inline LayeredGraph concatenate(const ConstructionSpec &spec) {
  if (spec.repetitions < 1) throw BuildError("repetitions must be >= 1");
  LayeredGraph out;
  if (const auto *m = std::get_if<ClumpMatrix>(&spec.block)) {
    if (auto d = m->first_deficit(spec.delta))
      throw BuildError("block infeasible: column " + std::to_string(d->column) + " color " + std::to_string(d->color) +
                       " has degree " + std::to_string(d->degree));
    std::vector<ClumpColumn> cols;
    if (m->mode() == ClumpMode::Block) {
      // A cyclic block is closed off by its own last and first columns.
      cols.push_back(m->column(m->length() - 1));
      const auto body = unrolled_columns(*m, spec.repetitions);
      cols.insert(cols.end(), body.begin(), body.end());
      cols.push_back(m->column(0));
    } else {
      if (!m->repeatable_permutation()) throw BuildError("matrix is not repeatable");
      cols = unrolled_columns(*m, spec.repetitions);
    }
    out = expand_columns(cols);
  } else {
    const auto &base = std::get<LayeredGraph>(spec.block);
    if (auto why = repeatable_violation(base, spec.delta, spec.mode)) throw BuildError("block not repeatable: " + *why);
    out = LayeredGraph{base.graph, base.layers, std::nullopt};
    for (int r = 1; r < spec.repetitions; ++r) out = detail::glue_period(out, base);
  }
  if (interior_min_degree(out) >= 0 && interior_min_degree(out) < spec.delta)
    throw BuildError("concatenation lost the degree bound");
  return spec.cap_ends ? cap_ends(out, spec.delta) : out;
}

struct ConstructionReport {
  int order = 0;
  int diameter = -1; // -1: disconnected
  int min_degree = 0;
  int interior_min_degree = -1;
  bool degree_ok = false;
  bool constraint_ok = false;
  ConstraintMode mode = ConstraintMode::Omega;
  std::optional<Ratio> achieved_ratio; // diameter / order
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Diameter, degrees and the constraint of a finished construction. With
/// `ends_exempt` the first and last layer are excluded from the degree bound
/// (uncapped repeatable graphs). Violations are reported, not thrown.
inline ConstructionReport verify_construction(const LayeredGraph &g, int delta, ConstraintMode mode,
                                              bool ends_exempt = false, int threads = 1) {
  ConstructionReport r;
  r.mode = mode;
  r.order = g.graph.order();
  if (r.order == 0) {
    r.failure = "empty graph";
    return r;
  }
  r.min_degree = g.graph.min_degree();
  r.interior_min_degree = interior_min_degree(g);
  r.degree_ok = ends_exempt ? r.interior_min_degree < 0 || r.interior_min_degree >= delta : r.min_degree >= delta;
  try {
    r.diameter = diameter(g.graph, threads);
    r.achieved_ratio = Ratio(r.diameter, r.order);
  } catch (const GraphError &) {
    r.diameter = -1;
  }
  try {
    if (mode == ConstraintMode::Chi && !(g.coloring && is_proper_coloring(g.graph, *g.coloring, 3)) && r.order > 200)
      r.constraint_ok = false;
    else
      r.constraint_ok = satisfies_mode(g, mode);
  } catch (const GraphError &) {
    r.constraint_ok = false;
  }
  if (r.diameter < 0)
    r.failure = "graph is disconnected";
  else if (!r.degree_ok)
    r.failure = "minimum degree below " + std::to_string(delta);
  else if (!r.constraint_ok)
    r.failure = mode == ConstraintMode::Omega ? "graph contains K4" : "no 3-coloring found";
  return r;
}

} // namespace diamdeg

#endif
