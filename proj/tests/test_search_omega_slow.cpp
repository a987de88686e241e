#include <gtest/gtest.h>

#include "diamdeg/repeatable.hpp"
#include "diamdeg/search_omega.hpp"

using namespace diamdeg;

namespace {

OmegaSearchConfig delta6(bool seeded) {
  OmegaSearchConfig cfg;
  cfg.delta = 6;
  cfg.max_period = 18;
  cfg.profile = AssumptionProfile::for_delta6();
  cfg.seed_with_clump = seeded;
  return cfg;
}

} // namespace

TEST(SearchOmegaSlow, Delta6WithProfile) {
  const auto r = search_omega(delta6(true));
  EXPECT_EQ(r.best_ratio, Ratio(14, 37));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_repeatable(*r.witness, 6));
  EXPECT_EQ(r.witness_period, 14);
  for (int s : r.witness->layer_sizes()) EXPECT_LE(s, 5);
}

TEST(SearchOmegaSlow, Delta6WithoutSeed) {
  const auto r = search_omega(delta6(false));
  EXPECT_FALSE(r.seed.has_value());
  EXPECT_EQ(r.best_ratio, Ratio(14, 37));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_repeatable(*r.witness, 6));
}
