#include <gtest/gtest.h>

#include "diamdeg/builder.hpp"
#include "diamdeg/repeatable.hpp"
#include "test_util.hpp"

using namespace diamdeg;

namespace {

struct Fixture {
  const char *name;
  int delta;
};

const Fixture kBlocks[] = {{"delta4", 4},    {"delta5", 5},    {"delta6", 6},    {"delta7", 7},
                           {"delta8_t1", 8}, {"delta8_t2", 8}, {"delta8_t3", 8}};

LayeredGraph build(const ClumpMatrix &m, int reps, int delta, bool cap = false) {
  return concatenate(ConstructionSpec{m, reps, delta, cap});
}

int interior_order(const LayeredGraph &g) {
  const auto sizes = g.layer_sizes();
  return g.graph.order() - sizes.front() - sizes.back();
}

} // namespace

TEST(Concatenate, Figure1TwoPeriods) {
  const auto g = concatenate(ConstructionSpec{test::figure1(), 2, 3});
  EXPECT_EQ(g.layer_sizes(), (std::vector<int>{3, 2, 1, 3, 2, 1, 3, 2}));
  EXPECT_TRUE(verify_repeatable(g, 3));
}

TEST(Concatenate, OnePeriodIsTheBlock) {
  const auto f = test::figure1();
  const auto g = concatenate(ConstructionSpec{f, 1, 3});
  EXPECT_EQ(layered_to_string(g), layered_to_string(f));
  const auto m = test::load_block("delta4");
  EXPECT_EQ(layered_to_string(build(m, 1, 4)), layered_to_string(expand_to_graph(m.as_repeatable())));
}

TEST(Concatenate, Delta4ThreePeriods) {
  const auto g = build(test::load_block("delta4"), 3, 4);
  EXPECT_EQ(g.layer_count() - 2, 12);
  EXPECT_EQ(interior_order(g), 21);
  EXPECT_TRUE(verify_repeatable(g, 4));
}

TEST(Concatenate, RejectsBadInput) {
  const auto m = test::load_block("delta4");
  EXPECT_THROW(build(m, 0, 4), BuildError);
  EXPECT_THROW(build(m, 2, 5), BuildError);
  EXPECT_THROW(concatenate(ConstructionSpec{test::figure1(), 2, 4}), BuildError);
}

TEST(CapEnds, MinimumDegreeAndConstraint) {
  const auto g4 = build(test::load_block("delta4"), 1, 4, true);
  const auto r4 = verify_construction(g4, 4, ConstraintMode::Omega);
  EXPECT_TRUE(r4.ok()) << r4.failure.value_or("");
  EXPECT_GE(r4.min_degree, 4);
  const auto g8 = build(test::load_block("delta8_t1"), 2, 8, true);
  ASSERT_TRUE(g8.coloring.has_value());
  EXPECT_TRUE(is_proper_coloring(g8.graph, *g8.coloring, 3));
  const auto r8 = verify_construction(g8, 8, ConstraintMode::Chi);
  EXPECT_TRUE(r8.ok()) << r8.failure.value_or("");
}

TEST(CapEnds, EveryFixture) {
  for (const auto &f : kBlocks)
    for (int reps : {1, 2}) {
      const auto g = build(test::load_block(f.name), reps, f.delta, true);
      for (auto mode : {ConstraintMode::Chi, ConstraintMode::Omega}) {
        const auto r = verify_construction(g, f.delta, mode);
        EXPECT_TRUE(r.ok()) << f.name << " " << reps << " " << r.failure.value_or("");
        EXPECT_GE(r.min_degree, f.delta) << f.name;
      }
    }
}

// Diameter and order grow by one period and one block per repetition.
TEST(Progression, EveryFixture) {
  for (const auto &f : kBlocks) {
    const auto m = test::load_block(f.name);
    for (bool cap : {false, true}) {
      std::vector<ConstructionReport> reps;
      for (int r = 2; r <= 4; ++r)
        reps.push_back(verify_construction(build(m, r, f.delta, cap), f.delta, ConstraintMode::Chi, !cap));
      for (std::size_t i = 1; i < reps.size(); ++i) {
        ASSERT_TRUE(reps[i].ok() && reps[i - 1].ok()) << f.name;
        EXPECT_EQ(reps[i].diameter - reps[i - 1].diameter, m.length()) << f.name << " cap " << cap;
        EXPECT_EQ(reps[i].order - reps[i - 1].order, m.total()) << f.name << " cap " << cap;
      }
    }
  }
}

TEST(Progression, Delta16) {
  const auto m = test::load_block("delta16");
  const auto two = verify_construction(build(m, 2, 16), 16, ConstraintMode::Chi, true);
  const auto three = verify_construction(build(m, 3, 16), 16, ConstraintMode::Chi, true);
  ASSERT_TRUE(two.ok() && three.ok());
  EXPECT_EQ(three.diameter - two.diameter, 31);
  EXPECT_EQ(three.order - two.order, 216);
}

// Capped delta = 4 graphs sit a fixed distance below 4(n - 4)/7.
TEST(Progression, Delta4SharpnessConstant) {
  constexpr int kOffset = 4;
  const auto m = test::load_block("delta4");
  for (int r = 1; r <= 6; ++r) {
    const auto rep = verify_construction(build(m, r, 4, true), 4, ConstraintMode::Omega);
    ASSERT_TRUE(rep.ok());
    EXPECT_EQ(rep.diameter, 4 * (rep.order - 4) / 7 - kOffset) << r;
  }
}

TEST(VerifyConstruction, ReportsFailures) {
  SmallGraph two(2);
  const LayeredGraph split{Graph::from_small(two), {{0}, {1}}, std::nullopt};
  EXPECT_EQ(verify_construction(split, 1, ConstraintMode::Omega).failure, "graph is disconnected");
  const LayeredGraph k4{Graph::from_small(graphs::complete(4)), {{0, 1, 2, 3}}, std::nullopt};
  EXPECT_EQ(verify_construction(k4, 3, ConstraintMode::Omega).failure, "graph contains K4");
  EXPECT_EQ(verify_construction(k4, 3, ConstraintMode::Chi).failure, "no 3-coloring found");
  EXPECT_EQ(verify_construction(k4, 4, ConstraintMode::Omega).failure, "minimum degree below 4");
  const auto path = verify_construction(LayeredGraph{Graph::from_small(graphs::path(5)), {{0}, {1}, {2}, {3}, {4}}, std::nullopt},
                                        2, ConstraintMode::Omega, true);
  EXPECT_TRUE(path.ok());
  EXPECT_EQ(path.diameter, 4);
  EXPECT_EQ(path.achieved_ratio, Ratio(4, 5));
}
