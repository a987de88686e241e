#ifndef DIAMDEG_TESTS_INVARIANTS_HPP
#define DIAMDEG_TESTS_INVARIANTS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "diamdeg/clump.hpp"
#include "diamdeg/layered.hpp"

namespace test {

// Layer sizes of one period of a repeatable graph; index i wraps around.
inline std::vector<int> period_sizes(const diamdeg::LayeredGraph &g) {
  const auto sizes = g.layer_sizes();
  return std::vector<int>(sizes.begin() + 1, sizes.end() - 1);
}

inline std::vector<int> period_sizes(const diamdeg::ClumpMatrix &m) {
  std::vector<int> out;
  for (int j = 0; j < m.length(); ++j) out.push_back(m.column_sum(j));
  return out;
}

inline int window(const std::vector<int> &s, int i, int len) {
  const int n = static_cast<int>(s.size());
  int sum = 0;
  for (int k = 0; k < len; ++k) sum += s[((i + k) % n + n) % n];
  return sum;
}

// Empty when every 4 consecutive layers hold at least 7 vertices.
inline std::optional<std::string> quadruple_violation(const std::vector<int> &s) {
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (window(s, i, 4) < 7) return "layers from " + std::to_string(i) + " hold " + std::to_string(window(s, i, 4));
  return std::nullopt;
}

inline std::optional<std::string> delta5_pattern_violation(const std::vector<int> &s) {
  static const std::vector<std::vector<int>> allowed{
      {1, 1, 4, 2}, {1, 2, 4, 1}, {1, 3, 3, 1}, {1, 4, 2, 1}, {2, 4, 1, 1}};
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i) {
    if (window(s, i, 4) > 8) continue;
    std::vector<int> q;
    for (int k = 0; k < 4; ++k) q.push_back(s[(i + k) % n]);
    if (std::find(allowed.begin(), allowed.end(), q) == allowed.end())
      return "quadruple at " + std::to_string(i) + " sums to " + std::to_string(window(s, i, 4));
  }
  return std::nullopt;
}

// Columns with all three colors: the window around them is large and both
// neighbors carry at least two colors.
inline std::optional<std::string> three_color_violation(const diamdeg::ClumpMatrix &m, int delta) {
  const auto s = period_sizes(m);
  const int n = m.length();
  for (int j = 0; j < n; ++j) {
    if (m.colors_present(j) != 3) continue;
    if (window(s, j - 1, 3) < (3 * delta + 1) / 2) return "window at column " + std::to_string(j);
    if (m.colors_present((j + n - 1) % n) < 2 || m.colors_present((j + 1) % n) < 2)
      return "neighbor of column " + std::to_string(j);
  }
  return std::nullopt;
}

} // namespace test

#endif
