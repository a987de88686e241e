#include <gtest/gtest.h>

#include "diamdeg/search_chi.hpp"
#include "diamdeg/search_omega.hpp"
#include "invariants.hpp"
#include "test_util.hpp"

using namespace diamdeg;

namespace {

ChiSearchResult chi(int delta, int period, int cap = 0) {
  ChiSearchConfig cfg;
  cfg.delta = delta;
  cfg.max_period = period;
  cfg.max_column_sum = cap;
  return search_chi(cfg);
}

OmegaSearchResult omega(int delta, int period, int layer, const std::string &profile) {
  OmegaSearchConfig cfg;
  cfg.delta = delta;
  cfg.max_period = period;
  cfg.max_layer_size = layer;
  cfg.profile = AssumptionProfile::parse(profile);
  return search_omega(cfg);
}

Ratio upper_bound(int delta) { return Ratio(7, 3 * delta); }

} // namespace

TEST(Invariants, QuadruplesDelta4) {
  const auto c = chi(4, 20);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(test::quadruple_violation(test::period_sizes(*c.witness)), std::nullopt);
  const auto w = omega(4, 12, 8, "none");
  ASSERT_TRUE(w.witness);
  EXPECT_EQ(test::quadruple_violation(test::period_sizes(*w.witness)), std::nullopt);
  EXPECT_EQ(test::quadruple_violation(test::period_sizes(test::load_block("delta4"))), std::nullopt);
  EXPECT_NE(test::quadruple_violation({1, 2, 1, 2}), std::nullopt);
}

TEST(Invariants, PatternsDelta5) {
  const auto c = chi(5, 20);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(test::delta5_pattern_violation(test::period_sizes(*c.witness)), std::nullopt);
  const auto w = omega(5, 14, 10, "delta5");
  ASSERT_TRUE(w.witness);
  EXPECT_EQ(test::delta5_pattern_violation(test::period_sizes(*w.witness)), std::nullopt);
  EXPECT_EQ(test::delta5_pattern_violation(test::period_sizes(test::load_block("delta5"))), std::nullopt);
  EXPECT_NE(test::delta5_pattern_violation({2, 2, 2, 2}), std::nullopt);
}

TEST(Invariants, ThreeColorColumns) {
  const std::vector<std::pair<int, ChiSearchResult>> found{
      {4, chi(4, 20)}, {5, chi(5, 20)}, {6, chi(6, 20)}, {7, chi(7, 40, 6)}, {8, chi(8, 40, 7)}};
  for (const auto &[delta, r] : found) {
    ASSERT_TRUE(r.witness) << delta;
    EXPECT_EQ(test::three_color_violation(*r.witness, delta), std::nullopt) << delta;
  }
  const std::pair<const char *, int> blocks[] = {{"delta4", 4},    {"delta5", 5},    {"delta6", 6},
                                                 {"delta7", 7},    {"delta8_t1", 8}, {"delta8_t2", 8},
                                                 {"delta8_t3", 8}, {"delta16", 16}};
  for (const auto &[name, delta] : blocks)
    EXPECT_EQ(test::three_color_violation(test::load_block(name), delta), std::nullopt) << name;
}

TEST(Invariants, RatioBelowUpperBound) {
  EXPECT_LE(*chi(4, 20).best_ratio, upper_bound(4));
  EXPECT_LE(*chi(5, 20).best_ratio, upper_bound(5));
  EXPECT_LE(*chi(6, 20).best_ratio, upper_bound(6));
  EXPECT_LE(*chi(7, 40, 6).best_ratio, upper_bound(7));
  EXPECT_LE(*chi(8, 40, 7).best_ratio, upper_bound(8));
  for (int delta = 4; delta <= 5; ++delta)
    for (int c = 1; c <= 10; ++c) {
      const auto r = chi(delta, c);
      ASSERT_TRUE(r.best_ratio) << delta << " " << c;
      EXPECT_LE(*r.best_ratio, upper_bound(delta)) << delta << " " << c;
    }
}
