#include <algorithm>

#include <gtest/gtest.h>

#include "diamdeg/clump.hpp"
#include "diamdeg/graph.hpp"
#include "test_util.hpp"

using namespace diamdeg;

namespace {

struct Fixture {
  const char *name;
  int delta;
  Ratio ratio;
};

const Fixture kFixtures[] = {{"delta4", 4, {4, 7}},      {"delta5", 5, {5, 11}},    {"delta6", 6, {14, 37}},
                             {"delta7", 7, {17, 52}},    {"delta8_t1", 8, {2, 7}},  {"delta8_t2", 8, {2, 7}},
                             {"delta8_t3", 8, {2, 7}},   {"delta16", 16, {31, 216}}, {"delta4_printed", 4, {4, 7}}};

} // namespace

TEST(ClumpDegree, Delta4Block) {
  const auto m = test::load_block("delta4");
  EXPECT_EQ(m.interior_degree(0, 0), 4);
  EXPECT_EQ(m.interior_degree(2, 0), 4);
  EXPECT_THROW(m.interior_degree(0, 1), ClumpError);
  const auto tri = ClumpMatrix::from_rows({{1}, {1}, {1}}, ClumpMode::Repeatable);
  EXPECT_EQ(tri.interior_degree(0, 1), 2);
}

// Every class degree equals the degree of its vertices in the middle copy of
// a three-fold expansion.
TEST(ClumpDegree, MatchesExpansion) {
  for (const auto &f : kFixtures) {
    const auto m = test::load_block(f.name);
    const auto g = expand_to_graph(m, 3);
    for (int j = 0; j < m.length(); ++j)
      for (int v : g.layers[m.length() + j]) {
        const int c = (*g.coloring)[v];
        EXPECT_EQ(g.graph.degree(v), m.interior_degree(j, c)) << f.name << " column " << j;
      }
  }
}

TEST(ClumpFeasibility, Examples) {
  EXPECT_TRUE(test::load_block("delta5").is_feasible_block(5));
  const auto t1 = test::load_block("delta8_t1");
  EXPECT_TRUE(t1.is_feasible_block(8));
  EXPECT_FALSE(t1.is_feasible_block(9));
  const auto d = t1.first_deficit(9);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->degree, 8);
}

TEST(ClumpExpand, Examples) {
  const auto tri = expand_to_graph(ClumpMatrix::from_rows({{1}, {1}, {1}}, ClumpMode::Block));
  EXPECT_EQ(tri.graph.order(), 3);
  EXPECT_EQ(tri.graph.edge_count(), 3u);
  const auto d4 = expand_to_graph(test::load_block("delta4"));
  EXPECT_EQ(d4.graph.order(), 7);
  EXPECT_TRUE(is_k4_free(d4.graph));
  EXPECT_TRUE(is_proper_coloring(d4.graph, *d4.coloring, 3));
  EXPECT_EQ(expand_to_graph(test::load_block("delta16")).graph.order(), 216);
}

TEST(ClumpExpand, ThreePartiteIsK4Free) {
  for (const auto &f : kFixtures) {
    const auto g = expand_to_graph(test::load_block(f.name), 2);
    EXPECT_TRUE(is_k4_free(g.graph)) << f.name;
    EXPECT_TRUE(is_proper_coloring(g.graph, *g.coloring, 3)) << f.name;
  }
}

TEST(ClumpRatio, Fixtures) {
  for (const auto &f : kFixtures) EXPECT_EQ(test::load_block(f.name).block_ratio(f.delta), f.ratio) << f.name;
  EXPECT_GT(test::load_block("delta16").block_ratio(16), Ratio(1, 7));
  EXPECT_THROW(test::load_block("delta5").block_ratio(6), ClumpError);
}

TEST(RepeatablePermutation, PrintedDelta4IsTwoBlocks) {
  // The printed 8-column matrix is the 4-column block written twice.
  const auto printed = test::load_block("delta4_printed");
  const auto block = test::load_block("delta4");
  EXPECT_EQ(printed.columns(), unrolled_columns(block, 2));
  // Read as a repeatable matrix it has no seam permutation.
  const ClumpMatrix as_rep(3, printed.columns(), ClumpMode::Repeatable);
  EXPECT_FALSE(as_rep.repeatable_permutation().has_value());
  const auto closed = test::load_block("delta4_repeatable");
  ASSERT_TRUE(closed.repeatable_permutation().has_value());
  EXPECT_TRUE(closed.repeatable_permutation()->is_identity());
  EXPECT_EQ(closed.ratio(), Ratio(4, 7));
}

TEST(RepeatablePermutation, RowSwapMatchesExhaustiveCheck) {
  // Last two columns are the first two with rows 0 and 1 exchanged.
  const auto m = ClumpMatrix::from_rows({{1, 0, 2, 0, 2}, {0, 2, 0, 1, 0}, {0, 1, 0, 0, 1}}, ClumpMode::Repeatable);
  const auto pi = m.repeatable_permutation();
  ASSERT_TRUE(pi.has_value());
  EXPECT_FALSE(pi->is_identity());
  std::vector<int> p{0, 1, 2};
  std::vector<std::vector<int>> valid;
  do {
    bool ok = true;
    for (int j : {0, 1})
      for (int r = 0; r < 3; ++r) ok = ok && m.entry(r, j) == m.entry(p[r], m.length() - 2 + j);
    if (ok) valid.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  ASSERT_EQ(valid.size(), 1u);
  EXPECT_EQ(pi->apply(m.column(0)), m.column(3));
  EXPECT_EQ(pi->apply(m.column(1)), m.column(4));
}

TEST(RepeatablePermutation, DifferentSumsHaveNone) {
  const auto m = ClumpMatrix::from_rows({{1, 0, 1, 0}, {0, 1, 1, 1}, {0, 1, 0, 1}}, ClumpMode::Repeatable);
  EXPECT_FALSE(m.repeatable_permutation().has_value());
}

TEST(ClumpText, RoundTripAndErrors) {
  for (const auto &f : kFixtures) {
    const auto m = test::load_block(f.name);
    EXPECT_EQ(ClumpMatrix::parse(m.serialize()), m);
  }
  EXPECT_THROW(ClumpMatrix::parse("chi=3 columns=2 mode=block\n1 0\n0 1\n"), ClumpError);
  EXPECT_THROW(ClumpMatrix::parse("chi=3 columns=2 mode=block\n1 0\n0 1\n0 -1\n"), ClumpError);
}
