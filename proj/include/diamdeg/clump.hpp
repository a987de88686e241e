#ifndef DIAMDEG_CLUMP_HPP
#define DIAMDEG_CLUMP_HPP

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "layered.hpp"
#include "ratio.hpp"

namespace diamdeg {

struct ClumpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Color-class sizes of one layer: counts[c] vertices of color c.
using ClumpColumn = std::vector<int>;

/// Bijection on colors: row r is sent to row perm[r].
struct ColorPermutation {
  std::vector<int> perm;

  bool is_identity() const {
    for (std::size_t r = 0; r < perm.size(); ++r)
      if (perm[r] != static_cast<int>(r)) return false;
    return true;
  }

  ClumpColumn apply(const ClumpColumn &col) const {
    ClumpColumn out(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) out[perm[r]] = col[r];
    return out;
  }

  int operator()(int color) const { return perm[color]; }

  ColorPermutation then(const ColorPermutation &next) const {
    ColorPermutation out{perm};
    for (auto &p : out.perm) p = next.perm[p];
    return out;
  }

  static ColorPermutation identity(int chi) {
    ColorPermutation p{std::vector<int>(static_cast<std::size_t>(chi))};
    std::iota(p.perm.begin(), p.perm.end(), 0);
    return p;
  }

  friend bool operator==(const ColorPermutation &, const ColorPermutation &) = default;
};

enum class ClumpMode { Block, Repeatable };

/// A vertex-class whose degree falls short in a feasibility check.
struct DegreeDeficit {
  int column;
  int color;
  int degree;
};

/// chi x l matrix of color-class counts per layer.
///
/// In the expanded graph every vertex of color c in layer j is joined to all
/// vertices of the other colors in layers j-1, j and j+1, so
///   deg(c, j) = (S[j-1] - a[c][j-1]) + (S[j] - a[c][j]) + (S[j+1] - a[c][j+1])
/// where S is the column sum. Block mode reads indices cyclically (the
/// fundamental block glued to itself); repeatable mode treats the outside
/// as empty.
class ClumpMatrix {
public:
  ClumpMatrix() = default;

  ClumpMatrix(int chi, std::vector<ClumpColumn> columns, ClumpMode mode)
      : chi_(chi), columns_(std::move(columns)), mode_(mode) {
    if (chi_ < 1) throw ClumpError("chi must be positive");
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (static_cast<int>(columns_[j].size()) != chi_)
        throw ClumpError("column " + std::to_string(j) + " does not have chi entries");
      int sum = 0;
      for (int a : columns_[j]) {
        if (a < 0) throw ClumpError("negative entry in column " + std::to_string(j));
        sum += a;
      }
      if (sum == 0) throw ClumpError("column " + std::to_string(j) + " is empty");
    }
  }

  /// Builds from rows as printed (row c lists a[c][0..l-1]).
  static ClumpMatrix from_rows(const std::vector<std::vector<int>> &rows, ClumpMode mode) {
    if (rows.empty()) throw ClumpError("matrix has no rows");
    std::vector<ClumpColumn> cols(rows.front().size(), ClumpColumn(rows.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
      if (rows[c].size() != cols.size()) throw ClumpError("ragged matrix rows");
      for (std::size_t j = 0; j < cols.size(); ++j) cols[j][c] = rows[c][j];
    }
    return ClumpMatrix(static_cast<int>(rows.size()), std::move(cols), mode);
  }

  int chi() const { return chi_; }
  int length() const { return static_cast<int>(columns_.size()); }
  ClumpMode mode() const { return mode_; }
  const std::vector<ClumpColumn> &columns() const { return columns_; }
  const ClumpColumn &column(int j) const { return columns_[j]; }
  int entry(int color, int j) const { return columns_[j][color]; }

  int column_sum(int j) const { return std::accumulate(columns_[j].begin(), columns_[j].end(), 0); }

  int total() const {
    int sum = 0;
    for (int j = 0; j < length(); ++j) sum += column_sum(j);
    return sum;
  }

  /// c(j): number of colors present in layer j.
  int colors_present(int j) const {
    return static_cast<int>(std::count_if(columns_[j].begin(), columns_[j].end(), [](int a) { return a > 0; }));
  }

  int interior_degree(int j, int color) const {
    if (j < 0 || j >= length() || color < 0 || color >= chi_) throw ClumpError("index out of range");
    if (columns_[j][color] == 0) throw ClumpError("empty class");
    int deg = 0;
    for (int dj = -1; dj <= 1; ++dj) {
      int k = j + dj;
      if (mode_ == ClumpMode::Block) {
        k = (k + length()) % length();
      } else if (k < 0 || k >= length()) {
        continue;
      }
      deg += column_sum(k) - columns_[k][color];
    }
    return deg;
  }

  /// First occupied class below `delta`, scanning column-major. Repeatable
  /// mode exempts the first and last column.
  std::optional<DegreeDeficit> first_deficit(int delta) const {
    int lo = 0, hi = length();
    if (mode_ == ClumpMode::Repeatable) {
      lo = 1;
      hi = length() - 1;
    }
    for (int j = lo; j < hi; ++j)
      for (int c = 0; c < chi_; ++c) {
        if (columns_[j][c] == 0) continue;
        const int d = interior_degree(j, c);
        if (d < delta) return DegreeDeficit{j, c, d};
      }
    return std::nullopt;
  }

  bool is_feasible_block(int delta) const { return length() > 0 && !first_deficit(delta); }

  /// Permutation pi with column[l-2] = pi(column[0]) and column[l-1] =
  /// pi(column[1]); the lexicographically smallest one when several exist.
  std::optional<ColorPermutation> repeatable_permutation() const {
    if (length() < 3) throw ClumpError("repeatable_permutation needs at least 3 columns");
    ColorPermutation pi = ColorPermutation::identity(chi_);
    do {
      if (pi.apply(columns_[0]) == columns_[length() - 2] && pi.apply(columns_[1]) == columns_[length() - 1])
        return pi;
    } while (std::next_permutation(pi.perm.begin(), pi.perm.end()));
    return std::nullopt;
  }

  /// Repetition length over interior order: for a block, length / total.
  Ratio ratio() const {
    if (mode_ == ClumpMode::Block) return Ratio(length(), total());
    if (length() < 3) throw ClumpError("a repeatable matrix needs at least 3 columns");
    return Ratio(length() - 2, total() - column_sum(0) - column_sum(length() - 1));
  }

  Ratio block_ratio(int delta) const {
    if (mode_ != ClumpMode::Block) throw ClumpError("block_ratio expects a block-mode matrix");
    if (auto d = first_deficit(delta))
      throw ClumpError("infeasible block: column " + std::to_string(d->column) + " color " +
                       std::to_string(d->color) + " has degree " + std::to_string(d->degree));
    return ratio();
  }

  /// Fundamental block of a repeatable matrix (its interior columns).
  ClumpMatrix interior_block() const {
    if (mode_ != ClumpMode::Repeatable || length() < 3) throw ClumpError("interior_block expects a repeatable matrix");
    return ClumpMatrix(chi_, std::vector<ClumpColumn>(columns_.begin() + 1, columns_.end() - 1), ClumpMode::Block);
  }

  /// Repeatable matrix of one period: the block preceded by its last column
  /// and followed by its first.
  ClumpMatrix as_repeatable() const {
    if (mode_ != ClumpMode::Block) throw ClumpError("as_repeatable expects a block-mode matrix");
    std::vector<ClumpColumn> cols;
    cols.push_back(columns_.back());
    cols.insert(cols.end(), columns_.begin(), columns_.end());
    cols.push_back(columns_.front());
    return ClumpMatrix(chi_, std::move(cols), ClumpMode::Repeatable);
  }

  /// Row-major text: "chi=<c> columns=<l> mode=<block|repeatable>" then rows.
  std::string serialize() const {
    std::ostringstream os;
    os << "chi=" << chi_ << " columns=" << length() << " mode=" << (mode_ == ClumpMode::Block ? "block" : "repeatable")
       << '\n';
    for (int c = 0; c < chi_; ++c) {
      for (int j = 0; j < length(); ++j) os << (j ? " " : "") << columns_[j][c];
      os << '\n';
    }
    return os.str();
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(chi_));
    for (int c = 0; c < chi_; ++c)
      for (int j = 0; j < length(); ++j) out[c].push_back(columns_[j][c]);
    return out;
  }

  static ClumpMatrix parse(std::istream &is) {
    std::string line;
    auto next_line = [&]() -> bool {
      while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
      }
      return false;
    };
    if (!next_line()) throw ClumpError("missing header line");
    int chi = -1, length = -1;
    std::string mode_text;
    std::istringstream header(line);
    std::string field;
    while (header >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ClumpError("malformed header field '" + field + "'");
      const std::string name = field.substr(0, eq), value = field.substr(eq + 1);
      try {
        if (name == "chi") chi = std::stoi(value);
        else if (name == "columns") length = std::stoi(value);
        else if (name == "mode") mode_text = value;
        else throw ClumpError("unknown header field '" + name + "'");
      } catch (const std::logic_error &) {
        throw ClumpError("malformed header value '" + field + "'");
      }
    }
    if (chi < 1 || length < 1) throw ClumpError("header needs chi and columns");
    ClumpMode mode;
    if (mode_text == "block") mode = ClumpMode::Block;
    else if (mode_text == "repeatable") mode = ClumpMode::Repeatable;
    else throw ClumpError("mode must be block or repeatable");
    std::vector<std::vector<int>> rows;
    for (int c = 0; c < chi; ++c) {
      if (!next_line()) throw ClumpError("expected " + std::to_string(chi) + " rows");
      std::istringstream rs(line);
      std::vector<int> row;
      std::string tok;
      while (rs >> tok) {
        std::size_t used = 0;
        int value = 0;
        try {
          value = std::stoi(tok, &used);
        } catch (const std::logic_error &) {
          throw ClumpError("non-integer entry '" + tok + "'");
        }
        if (used != tok.size()) throw ClumpError("non-integer entry '" + tok + "'");
        row.push_back(value);
      }
      if (static_cast<int>(row.size()) != length)
        throw ClumpError("row " + std::to_string(c) + " has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(length));
      rows.push_back(std::move(row));
    }
    return from_rows(rows, mode);
  }

  static ClumpMatrix parse(const std::string &text) {
    std::istringstream is(text);
    return parse(is);
  }

  friend bool operator==(const ClumpMatrix &, const ClumpMatrix &) = default;

private:
  int chi_ = 3;
  std::vector<ClumpColumn> columns_;
  ClumpMode mode_ = ClumpMode::Block;
};

/// Explicit clump graph on a sequence of columns; consecutive columns are
/// joined between different colors, no wrap-around edges. The result
/// carries its color classes as a coloring certificate.
inline LayeredGraph expand_columns(const std::vector<ClumpColumn> &columns) {
  LayeredGraph out;
  std::vector<int> color;
  for (const auto &col : columns) {
    out.layers.emplace_back();
    for (std::size_t c = 0; c < col.size(); ++c)
      for (int i = 0; i < col[c]; ++i) {
        out.layers.back().push_back(static_cast<int>(color.size()));
        color.push_back(static_cast<int>(c));
      }
  }
  out.graph = Graph(static_cast<int>(color.size()));
  for (std::size_t j = 0; j < out.layers.size(); ++j) {
    const auto &here = out.layers[j];
    for (std::size_t a = 0; a < here.size(); ++a)
      for (std::size_t b = a + 1; b < here.size(); ++b)
        if (color[here[a]] != color[here[b]]) out.graph.add_edge(here[a], here[b]);
    if (j + 1 < out.layers.size())
      for (int u : here)
        for (int v : out.layers[j + 1])
          if (color[u] != color[v]) out.graph.add_edge(u, v);
  }
  out.coloring = std::move(color);
  return out;
}

/// Columns of `m` repeated `repetitions` times. A repeatable matrix is
/// unrolled through its seam permutation, yielding a repeatable matrix of
/// `repetitions` periods.
inline std::vector<ClumpColumn> unrolled_columns(const ClumpMatrix &m, int repetitions) {
  if (repetitions < 1) throw ClumpError("repetitions must be >= 1");
  std::vector<ClumpColumn> cols;
  if (m.mode() == ClumpMode::Block) {
    for (int r = 0; r < repetitions; ++r) cols.insert(cols.end(), m.columns().begin(), m.columns().end());
    return cols;
  }
  const auto pi = m.repeatable_permutation();
  if (!pi) throw ClumpError("matrix is not repeatable");
  ColorPermutation acc = ColorPermutation::identity(m.chi());
  cols.push_back(m.column(0));
  for (int r = 0; r < repetitions; ++r) {
    for (int j = 1; j < m.length() - 1; ++j) cols.push_back(acc.apply(m.column(j)));
    acc = acc.then(*pi);
  }
  cols.push_back(acc.apply(m.column(1)));
  return cols;
}

inline LayeredGraph expand_to_graph(const ClumpMatrix &m, int repetitions = 1) {
  if (repetitions > 1 && m.mode() != ClumpMode::Block && !m.repeatable_permutation())
    throw ClumpError("repetitions > 1 need a block or a repeatable matrix");
  return expand_columns(unrolled_columns(m, repetitions));
}

} // namespace diamdeg

#endif
