#ifndef DIAMDEG_RATIO_HPP
#define DIAMDEG_RATIO_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace diamdeg {

/// Exact reduced fraction num/den with den > 0.
///
/// Used for every diameter-to-order ratio in the project; comparisons
/// go through 128-bit cross multiplication so they never round.
class Ratio {
public:
  constexpr Ratio() = default;

  constexpr Ratio(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  friend constexpr bool operator==(const Ratio &, const Ratio &) = default;

  friend constexpr std::strong_ordering operator<=>(const Ratio &a, const Ratio &b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "p/q" or a bare integer.
  static Ratio parse(const std::string &text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Ratio(std::stoll(text));
      return Ratio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error &) {
      throw std::invalid_argument("Ratio: cannot parse '" + text + "'");
    }
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream &operator<<(std::ostream &os, const Ratio &r) { return os << r.str(); }

} // namespace diamdeg

#endif
