#include <gtest/gtest.h>

#include <numeric>

#include "atdist/counterexample_harness.hpp"
#include "atdist/report.hpp"
#include "support/trees.hpp"

using namespace atdist;

TEST(Wsd, WeightedSum) {
  EXPECT_DOUBLE_EQ(wsd(1, 2, 3, 4, Alpha{}), 0.5 + 0.5 + 0.75);
  EXPECT_DOUBLE_EQ(wsd(1, 2, 3, 4, Alpha(0, 0, 0, 1)), 4.0);
}

TEST(Wsd, Linear) {
  const Alpha a(0.3, 0.2, 0.1, 0.4);
  for (double k : {0.0, 0.5, 2.0, 10.0}) {
    EXPECT_NEAR(wsd(k * 1, k * 2, k * 3, k * 4, a), k * wsd(1, 2, 3, 4, a), 1e-12);
  }
}

TEST(Wsd, AlphaValidation) {
  EXPECT_THROW(Alpha(-0.1, 0, 0, 1), ConfigError);
  EXPECT_THROW(Alpha(0, 0, 0, 0), ConfigError);
  EXPECT_THROW(Alpha(std::nan(""), 1, 0, 0), ConfigError);
}

TEST(Wsd, UnitAlphaEqualsLabelDistance) {
  CompareConfig cfg;
  cfg.alpha = Alpha(1, 0, 0, 0);
  const AttackTree base = build_counterexample("base");
  for (const AttackTree& t : support::corpus()) {
    const DistanceReport r = compare_all(LevenshteinSimilarity{}, cfg, t, base);
    EXPECT_EQ(r.wsd, r.ld.absolute);
    EXPECT_EQ(r.wsd_normalized, r.ld.normalized);
  }
}

TEST(CompareAll, IdenticalTreesAllZero) {
  const AttackTree base = build_counterexample("base");
  const DistanceReport r = compare_all(ExactSimilarity{}, CompareConfig{}, base, base);
  for (Measure m : {Measure::LD, Measure::TED, Measure::RD, Measure::MSD, Measure::WSD}) {
    EXPECT_EQ(r.absolute(m), 0.0);
    EXPECT_EQ(r.normalized(m), 0.0);
  }
  EXPECT_EQ(r.provider, "exact");
  EXPECT_EQ(r.source_size, 7u);
}

TEST(CompareAll, NormalizesByLargerTree) {
  const DistanceReport r = compare_all(ExactSimilarity{}, counterexample_config(), build_counterexample("extra-leaf"),
                                       build_counterexample("base"));
  EXPECT_DOUBLE_EQ(r.ld.normalized, 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(r.ted.normalized, 1.0 / 8.0);
}

TEST(Measure, ParseRoundTrip) {
  for (Measure m : {Measure::LD, Measure::TED, Measure::RD, Measure::MSD, Measure::WSD}) {
    EXPECT_EQ(parse_measure(to_string(m)), m);
  }
  EXPECT_THROW(parse_measure("jaccard"), ConfigError);
}

TEST(EpsilonGrid, DefaultHas101Points) {
  const auto p = EpsilonGrid{}.points();
  ASSERT_EQ(p.size(), 101u);
  EXPECT_EQ(p.front(), 0.0);
  EXPECT_EQ(p.back(), 1.0);
  EXPECT_EQ(p[70], 0.7);
  EXPECT_EQ(p[7], 0.07);
}

TEST(EpsilonGrid, OtherSteps) {
  EXPECT_EQ((EpsilonGrid{0, 1, 0.1}.points().size()), 11u);
  EXPECT_EQ((EpsilonGrid{0, 1, 0.3}.points()), (std::vector<double>{0, 0.3, 0.6, 0.9}));
  EXPECT_EQ((EpsilonGrid{0, 1, 2}.points()), (std::vector<double>{0}));
  EXPECT_THROW(EpsilonGrid({0, 1, 0}).points(), ConfigError);
  EXPECT_THROW(EpsilonGrid({0.5, 0.2, 0.1}).points(), ConfigError);
  EXPECT_THROW(EpsilonGrid({0, 1.5, 0.1}).points(), ConfigError);
}

TEST(OpPercentages, SumToHundred) {
  const auto p = op_percentages(OpCounts{1, 2, 3, 4});
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(p[3], 40.0);
  const auto z = op_percentages(OpCounts{});
  EXPECT_EQ(std::accumulate(z.begin(), z.end(), 0.0), 0.0);
}

TEST(Sweep, RowsAndZeroForIdentical) {
  const AttackTree base = build_counterexample("base");
  const auto rows = epsilon_sweep(LevenshteinSimilarity{}, CompareConfig{}, base, base);
  ASSERT_EQ(rows.size(), 101u);
  for (const SweepRow& r : rows) {
    for (double v : r.normalized) EXPECT_EQ(v, 0.0);
    for (const auto& pct : r.op_pct) EXPECT_NEAR(std::accumulate(pct.begin(), pct.end(), 0.0), 100.0, 0.01);
  }
}

TEST(Sweep, MonotoneOnCorpusPairSample) {
  const auto trees = support::corpus();
  const auto rows = epsilon_sweep(LevenshteinSimilarity{}, CompareConfig{}, trees[3], trees[9], EpsilonGrid{0, 1, 0.05});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t m = 0; m < 5; ++m) EXPECT_GE(rows[i].normalized[m], rows[i - 1].normalized[m] - 1e-12);
  }
}

TEST(Matrix, SymmetricWithZeroDiagonal) {
  const auto trees = support::corpus();
  const std::vector<AttackTree> some(trees.begin(), trees.begin() + 5);
  const DistanceMatrix m = pairwise_matrix(ExactSimilarity{}, CompareConfig{}, some, Measure::WSD);
  ASSERT_EQ(m.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(m[i][i], 0.0);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(m[i][j], m[j][i], 1e-9);
  }
  const DistanceMatrix same =
      pairwise_matrix(ExactSimilarity{}, CompareConfig{}, {trees[0], trees[0]}, Measure::TED);
  EXPECT_EQ(same, (DistanceMatrix{{0, 0}, {0, 0}}));
  EXPECT_THROW(pairwise_matrix(ExactSimilarity{}, CompareConfig{}, {trees[0]}, Measure::LD), ConfigError);
}

TEST(Matrix, CellEqualsDirectComparison) {
  const auto trees = support::corpus();
  const std::vector<AttackTree> three(trees.begin(), trees.begin() + 3);
  const DistanceMatrix m = pairwise_matrix(LevenshteinSimilarity{}, CompareConfig{}, three, Measure::RD);
  EXPECT_EQ(m[0][2], compare_all(LevenshteinSimilarity{}, CompareConfig{}, three[0], three[2]).rd.normalized);
}

TEST(TriangleAudit, LabelDistanceHasNoViolations) {
  const auto v = triangle_audit(ExactSimilarity{}, counterexample_config(), support::corpus(), Measure::LD);
  EXPECT_TRUE(v.empty());
}

TEST(Counterexamples, AllHardChecksPass) {
  const CounterexampleRun run = run_counterexamples();
  ASSERT_EQ(run.rows.size(), 12u);
  for (const auto& row : run.rows) {
    EXPECT_TRUE(row.passed()) << row.expected->display << ": "
                              << (row.hard_failures.empty() ? "" : row.hard_failures.front());
  }
}
