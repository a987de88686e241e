#include <gtest/gtest.h>

#include "diamdeg/repeatable.hpp"
#include "diamdeg/search_omega.hpp"
#include "test_util.hpp"

using namespace diamdeg;

namespace {

OmegaSearchConfig config(int delta, int period, int layer, const std::string &profile = "none") {
  OmegaSearchConfig cfg;
  cfg.delta = delta;
  cfg.max_period = period;
  cfg.max_layer_size = layer;
  cfg.profile = AssumptionProfile::parse(profile);
  return cfg;
}

void expect_valid_witness(const OmegaSearchConfig &cfg, const OmegaSearchResult &r) {
  ASSERT_TRUE(r.best_ratio.has_value());
  ASSERT_TRUE(r.witness.has_value());
  const LayeredGraph &g = *r.witness;
  EXPECT_EQ(repeatable_violation(g, cfg.delta), std::nullopt);
  EXPECT_EQ(g.layer_count() - 2, r.witness_period);
  EXPECT_LE(r.witness_period, cfg.max_period);
  const auto sizes = g.layer_sizes();
  const int interior = g.graph.order() - sizes.front() - sizes.back();
  EXPECT_EQ(Ratio(r.witness_period, interior), *r.best_ratio);
  for (int s : sizes) EXPECT_LE(s, cfg.layer_cap());
}

} // namespace

TEST(VerifyRepeatable, Figure1) {
  const auto f = test::figure1();
  EXPECT_TRUE(verify_repeatable(f, 3));
  EXPECT_FALSE(verify_repeatable(f, 4));
  EXPECT_NE(repeatable_violation(f, 4)->find("degree"), std::string::npos);
}

TEST(VerifyRepeatable, ClumpExpansion) {
  const auto m = test::load_block("delta4_repeatable");
  EXPECT_TRUE(verify_repeatable(expand_to_graph(m), 4));
  EXPECT_TRUE(verify_repeatable(expand_to_graph(m), 4, ConstraintMode::Chi));
  EXPECT_TRUE(verify_repeatable(expand_to_graph(test::load_block("delta6").as_repeatable()), 6));
}

TEST(VerifyRepeatable, RejectsK4AndMismatchedEnds) {
  // A vertex, a triangle, a vertex; each end is joined to the whole triangle.
  SmallGraph w(5);
  for (int v : {1, 2, 3}) {
    w.add_edge(0, v);
    w.add_edge(4, v);
  }
  w.add_edge(1, 2);
  w.add_edge(1, 3);
  w.add_edge(2, 3);
  const LayeredGraph k4{Graph::from_small(w), {{0}, {1, 2, 3}, {4}}, std::nullopt};
  EXPECT_EQ(repeatable_violation(k4, 1), std::optional<std::string>("contains K4"));
  LayeredGraph path{Graph::from_small(graphs::path(4)), {{0}, {1}, {2}, {3}}, std::nullopt};
  EXPECT_TRUE(verify_repeatable(path, 2));
  path.graph.add_vertex();
  path.graph.add_edge(3, 4);
  path.layers[3].push_back(4);
  EXPECT_FALSE(verify_repeatable(path, 2));
}

TEST(AssumptionProfile, ParseAndValidate) {
  EXPECT_FALSE(AssumptionProfile::parse("none").any());
  EXPECT_EQ(AssumptionProfile::parse("delta5").flags(), (std::vector<std::string>{"size4"}));
  EXPECT_EQ(AssumptionProfile::parse("delta6").flags(), (std::vector<std::string>{"size5", "cap5", "adj44"}));
  EXPECT_EQ(AssumptionProfile::parse("cap5,adj44").flags(), (std::vector<std::string>{"cap5", "adj44"}));
  EXPECT_THROW(AssumptionProfile::parse("size7"), std::invalid_argument);
  EXPECT_THROW(search_omega(config(4, 12, 8, "delta5")), std::invalid_argument);
  EXPECT_THROW(search_omega(config(5, 12, 8, "delta6")), std::invalid_argument);
  EXPECT_THROW(search_omega(config(4, 12, 17)), std::invalid_argument);
}

TEST(SearchOmega, Delta4) {
  const auto cfg = config(4, 12, 8);
  const auto r = search_omega(cfg);
  EXPECT_EQ(r.best_ratio, Ratio(4, 7));
  expect_valid_witness(cfg, r);
}

TEST(SearchOmega, Delta5WithProfile) {
  const auto cfg = config(5, 14, 10, "delta5");
  const auto r = search_omega(cfg);
  EXPECT_EQ(r.best_ratio, Ratio(5, 11));
  expect_valid_witness(cfg, r);
  // Every layer of size 4 is a C4.
  const LayeredGraph &g = *r.witness;
  for (int i = 0; i < g.layer_count(); ++i) {
    if (g.layers[i].size() != 4) continue;
    for (int v : g.layers[i]) {
      int inside = 0;
      for (int w : g.layers[i]) inside += g.graph.adjacent(v, w);
      EXPECT_EQ(inside, 2);
    }
  }
}

TEST(SearchOmega, ShortPeriodsStillCloseUp) {
  const auto cfg = config(4, 2, 8);
  const auto r = search_omega(cfg);
  EXPECT_EQ(r.best_ratio, Ratio(1, 2));
  expect_valid_witness(cfg, r);
}

TEST(SearchOmega, NoWitnessWithTinyLayers) {
  const auto r = search_omega(config(4, 6, 1));
  EXPECT_FALSE(r.best_ratio.has_value());
  EXPECT_FALSE(r.witness.has_value());
}

TEST(SearchOmega, SeedDoesNotChangeSmallResults) {
  for (int c = 1; c <= 5; ++c) {
    auto cfg = config(4, c, 4);
    const auto seeded = search_omega(cfg);
    cfg.seed_with_clump = false;
    const auto plain = search_omega(cfg);
    EXPECT_EQ(seeded.best_ratio, plain.best_ratio) << c;
    EXPECT_EQ(seeded.witness_period, plain.witness_period) << c;
  }
}

TEST(SearchOmega, WorkerCountDoesNotChangeResult) {
  for (const auto &base : {config(4, 12, 8), config(5, 14, 10, "delta5")}) {
    auto cfg = base;
    cfg.threads = 1;
    const auto one = search_omega(cfg);
    for (int t : {4, 8}) {
      cfg.threads = t;
      const auto many = search_omega(cfg);
      EXPECT_EQ(many.best_ratio, one.best_ratio);
      EXPECT_EQ(many.witness_period, one.witness_period);
      ASSERT_TRUE(many.witness && one.witness);
      EXPECT_EQ(layered_to_string(*many.witness), layered_to_string(*one.witness));
    }
  }
}
