#include <gtest/gtest.h>

#include "diamdeg/graph.hpp"
#include "diamdeg/search_chi.hpp"
#include "test_util.hpp"

using namespace diamdeg;

namespace {

ChiSearchConfig config(int delta, int period, int colsum = 0) {
  ChiSearchConfig cfg;
  cfg.delta = delta;
  cfg.max_period = period;
  cfg.max_column_sum = colsum;
  return cfg;
}

// The witness is a feasible block whose ratio is the reported optimum.
void expect_valid_witness(const ChiSearchConfig &cfg, const ChiSearchResult &r) {
  ASSERT_TRUE(r.best_ratio.has_value());
  ASSERT_TRUE(r.witness.has_value());
  const ClumpMatrix &w = *r.witness;
  EXPECT_EQ(w.mode(), ClumpMode::Block);
  EXPECT_TRUE(w.is_feasible_block(cfg.delta));
  EXPECT_EQ(w.block_ratio(cfg.delta), *r.best_ratio);
  EXPECT_LE(r.witness_period, cfg.max_period);
  EXPECT_EQ(w.length() % r.witness_period, 0);
  for (int j = 0; j < w.length(); ++j) EXPECT_LE(w.column_sum(j), cfg.column_sum_cap());
  const auto g = expand_to_graph(w, 2);
  EXPECT_TRUE(is_proper_coloring(g.graph, *g.coloring, 3));
}

} // namespace

TEST(ExtendColumn, Delta8Examples) {
  ChiSearchConfig cfg = config(8, 40, 7);
  ChiSearchState s{{0, 2, 2}, {1, 0, 0}, {0, 2, 2}, {1, 0, 0}, 2, 5};
  const auto ok = extend_column(s, {0, 2, 2}, cfg);
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->layer_count, 3);
  EXPECT_EQ(ok->order, 9);
  EXPECT_FALSE(extend_column(s, {0, 1, 1}, cfg).has_value());
  EXPECT_FALSE(extend_column(s, {0, 0, 0}, cfg).has_value());
}

TEST(ExtendColumn, RespectsCapsAndFlags) {
  ChiSearchConfig cfg = config(4, 10, 3);
  const auto s = ChiSearchState::start({1, 0, 0}, {0, 1, 1});
  EXPECT_FALSE(extend_column(s, {2, 1, 1}, cfg).has_value());
  cfg.max_column_sum = 0;
  cfg.assume_missing_color = true;
  EXPECT_FALSE(extend_column(s, {1, 1, 1}, cfg).has_value());
}

TEST(DetectRepeatable, Delta4BlockClosesWithIdentity) {
  const std::vector<ClumpColumn> cols{{1, 0, 0}, {0, 1, 1}, {2, 0, 0}, {0, 1, 1}, {1, 0, 0}, {0, 1, 1}};
  auto s = ChiSearchState::start(cols[0], cols[1]);
  // Re-express the remaining columns in the frame of the canonical start.
  ColorPermutation sigma = ColorPermutation::identity(3);
  while (!(sigma.apply(cols[0]) == s.start0 && sigma.apply(cols[1]) == s.start1))
    ASSERT_TRUE(std::next_permutation(sigma.perm.begin(), sigma.perm.end()));
  const ChiSearchConfig cfg = config(4, 20, 8);
  for (std::size_t j = 2; j < cols.size(); ++j) {
    EXPECT_FALSE(detect_repeatable(s).has_value() && s.layer_count >= 4) << j;
    auto next = extend_column(s, sigma.apply(cols[j]), cfg);
    ASSERT_TRUE(next.has_value()) << j;
    s = *next;
  }
  EXPECT_EQ(s.layer_count, 6);
  const auto pi = detect_repeatable(s);
  ASSERT_TRUE(pi.has_value());
  EXPECT_TRUE(pi->is_identity());
}

TEST(DetectRepeatable, RowSwapAndMismatch) {
  const ChiSearchState swapped{{1, 0, 0}, {0, 1, 1}, {0, 1, 0}, {1, 0, 1}, 4, 0};
  const auto pi = detect_repeatable(swapped);
  ASSERT_TRUE(pi.has_value());
  EXPECT_EQ(pi->apply({1, 0, 0}), (ClumpColumn{0, 1, 0}));
  EXPECT_EQ(pi->apply({0, 1, 1}), (ClumpColumn{1, 0, 1}));
  EXPECT_EQ(pi->perm[2], 2);
  const ChiSearchState mismatch{{1, 0, 0}, {0, 1, 1}, {2, 0, 0}, {0, 1, 1}, 4, 0};
  EXPECT_FALSE(detect_repeatable(mismatch).has_value());
}

TEST(SearchChi, Delta4) {
  const auto cfg = config(4, 20, 8);
  const auto r = search_chi(cfg);
  EXPECT_EQ(r.best_ratio, Ratio(4, 7));
  expect_valid_witness(cfg, r);
}

TEST(SearchChi, Delta5And6) {
  const auto c5 = config(5, 20);
  const auto r5 = search_chi(c5);
  EXPECT_EQ(r5.best_ratio, Ratio(5, 11));
  expect_valid_witness(c5, r5);
  const auto c6 = config(6, 20);
  const auto r6 = search_chi(c6);
  EXPECT_EQ(r6.best_ratio, Ratio(14, 37));
  EXPECT_EQ(r6.witness_period, 14);
  expect_valid_witness(c6, r6);
}

TEST(SearchChi, Delta7And8WithColumnCap) {
  const auto c7 = config(7, 40, 6);
  const auto r7 = search_chi(c7);
  EXPECT_EQ(r7.best_ratio, Ratio(17, 52));
  expect_valid_witness(c7, r7);
  const auto c8 = config(8, 40, 7);
  const auto r8 = search_chi(c8);
  EXPECT_EQ(r8.best_ratio, Ratio(2, 7));
  expect_valid_witness(c8, r8);
}

TEST(SearchChi, NoWitnessWhenColumnsTooSmall) {
  const auto r = search_chi(config(4, 6, 1));
  EXPECT_FALSE(r.best_ratio.has_value());
  EXPECT_FALSE(r.witness.has_value());
}

TEST(SearchChi, PeriodBoundBelowOptimum) {
  // The optimum for delta = 4 has period 4; shorter bounds give 1/2.
  for (int c = 1; c <= 3; ++c) {
    const auto cfg = config(4, c, 8);
    const auto r = search_chi(cfg);
    EXPECT_EQ(r.best_ratio, Ratio(1, 2)) << c;
    expect_valid_witness(cfg, r);
  }
}

TEST(SearchChi, StrategiesAgree) {
  for (int delta : {4, 5})
    for (int c = 1; c <= 8; ++c) {
      ChiSearchConfig cfg = config(delta, c, 6);
      const auto a = search_chi(cfg);
      cfg.strategy = ChiStrategy::DynamicProgram;
      const auto b = search_chi(cfg);
      EXPECT_EQ(a.best_ratio, b.best_ratio) << delta << " " << c;
      EXPECT_EQ(a.witness_period, b.witness_period) << delta << " " << c;
    }
}

TEST(SearchChi, ConditionalFlags) {
  ChiSearchConfig cfg = config(6, 20);
  cfg.assume_missing_color = true;
  cfg.require_singleton_layer = true;
  EXPECT_TRUE(cfg.conditional());
  const auto r = search_chi(cfg);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(*r.best_ratio, Ratio(14, 37));
  bool singleton = false;
  for (int j = 0; j < r.witness->length(); ++j) {
    EXPECT_LE(r.witness->colors_present(j), 2);
    singleton = singleton || r.witness->colors_present(j) == 1;
  }
  EXPECT_TRUE(singleton);
}

TEST(SearchChi, WorkerCountDoesNotChangeResult) {
  for (auto strategy : {ChiStrategy::Auto, ChiStrategy::DynamicProgram}) {
    ChiSearchConfig cfg = config(5, 12, 6);
    cfg.strategy = strategy;
    cfg.threads = 1;
    const auto one = search_chi(cfg);
    for (int t : {4, 8}) {
      cfg.threads = t;
      const auto many = search_chi(cfg);
      EXPECT_EQ(many.best_ratio, one.best_ratio);
      EXPECT_EQ(many.witness_period, one.witness_period);
      ASSERT_TRUE(many.witness && one.witness);
      EXPECT_EQ(many.witness->serialize(), one.witness->serialize());
      EXPECT_EQ(many.seam, one.seam);
    }
  }
}

TEST(SearchChi, RejectsBadConfig) {
  ChiSearchConfig cfg = config(4, 0);
  EXPECT_THROW(search_chi(cfg), std::invalid_argument);
  cfg = config(4, 5);
  cfg.threads = 0;
  EXPECT_THROW(search_chi(cfg), std::invalid_argument);
}
