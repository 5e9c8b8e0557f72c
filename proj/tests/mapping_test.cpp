#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "atdist/counterexamples.hpp"
#include "atdist/mapping.hpp"
#include "support/trees.hpp"

using namespace atdist;

namespace {

SimilarityMatrix matrix(std::vector<std::vector<double>> v) {
  SimilarityMatrix m(v.size(), v.empty() ? 0 : v[0].size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v[i].size(); ++j) m(i, j) = v[i][j];
  }
  return m;
}

// (parent label, refinement, sorted child labels) for every internal node.
std::vector<std::tuple<std::string, Refinement, std::vector<std::string>>> families(const AttackTree& t) {
  std::vector<std::tuple<std::string, Refinement, std::vector<std::string>>> out;
  for (const AtNode* n : t.postorder()) {
    std::vector<std::string> kids;
    for (const AtNode& c : n->children) kids.push_back(c.label);
    std::sort(kids.begin(), kids.end());
    out.emplace_back(n->label, n->refinement, kids);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(GreedyPairing, TakesLargestFirst) {
  // 0.9 first removes row 0 and col 0; only (1,1) remains.
  const GreedyPairing g = greedy_pairing(matrix({{0.9, 0.8}, {0.85, 0.1}}));
  ASSERT_EQ(g.steps.size(), 2u);
  EXPECT_EQ(g.steps[0].row, 0u);
  EXPECT_EQ(g.steps[0].col, 0u);
  EXPECT_EQ(g.steps[1].row, 1u);
  EXPECT_EQ(g.steps[1].col, 1u);
  EXPECT_DOUBLE_EQ(g.steps[1].similarity, 0.1);
  EXPECT_TRUE(g.free_rows.empty());
  EXPECT_TRUE(g.free_cols.empty());
}

TEST(GreedyPairing, TiesGoToSmallestRowThenColumn) {
  const GreedyPairing g = greedy_pairing(matrix({{0.5, 0.5}, {0.5, 0.5}}));
  ASSERT_EQ(g.steps.size(), 2u);
  EXPECT_EQ(std::make_pair(g.steps[0].row, g.steps[0].col), std::make_pair(std::size_t{0}, std::size_t{0}));
  EXPECT_EQ(std::make_pair(g.steps[1].row, g.steps[1].col), std::make_pair(std::size_t{1}, std::size_t{1}));
}

TEST(GreedyPairing, RectangularLeavesFreeColumn) {
  const GreedyPairing g = greedy_pairing(matrix({{0.2, 0.9, 0.1}, {0.3, 0.8, 0.4}}));
  ASSERT_EQ(g.steps.size(), 2u);
  EXPECT_EQ(g.steps[0].col, 1u);
  EXPECT_EQ(g.steps[1].row, 1u);
  EXPECT_EQ(g.steps[1].col, 2u);
  EXPECT_EQ(g.free_cols, (std::vector<std::size_t>{0}));
}

TEST(GreedyPairing, FloorSkipsCells) {
  const GreedyPairing g = greedy_pairing(matrix({{-1.0, 0.5}, {-1.0, -1.0}}), 0.0);
  ASSERT_EQ(g.steps.size(), 1u);
  EXPECT_EQ(g.free_rows, (std::vector<std::size_t>{1}));
  EXPECT_EQ(g.free_cols, (std::vector<std::size_t>{0}));
}

TEST(GreedyPairing, EmptySides) {
  EXPECT_TRUE(greedy_pairing(SimilarityMatrix(0, 3)).steps.empty());
  EXPECT_EQ(greedy_pairing(SimilarityMatrix(0, 3)).free_cols.size(), 3u);
}

TEST(GreedyMap, SplitsPairsBelowEpsilon) {
  const AttackTree a(node("r", Refinement::Or, {leaf("abcd")}));
  const AttackTree b(node("r", Refinement::Or, {leaf("abce")}));
  const LevenshteinSimilarity lev;
  EXPECT_EQ(greedy_map(lev, Epsilon(0.7), a.postorder(), b.postorder()).matched(), 2u);
  const NodeMapping strict = greedy_map(lev, Epsilon(0.75), a.postorder(), b.postorder());
  EXPECT_EQ(strict.matched(), 1u);  // 0.75 is not above 0.75
  EXPECT_EQ(strict.pairs.size(), 3u);
}

TEST(SiblingReorder, RecoversBaseFromReversedOrder) {
  const AttackTree base = build_counterexample("base");
  const ReorderResult r = sibling_reorder(ExactSimilarity{}, build_counterexample("order-reversed"), base);
  EXPECT_EQ(r.tree, base);
  ASSERT_EQ(r.mapping.pairs.size(), 7u);
  for (const MappedPair& p : r.mapping.pairs) EXPECT_EQ(p.source, p.target);
}

TEST(SiblingReorder, UnmatchedChildrenKeepOrderAfterMatched) {
  const AttackTree s(node("r", Refinement::Or, {leaf("x"), leaf("b"), leaf("y"), leaf("a")}));
  const AttackTree t(node("r", Refinement::Or, {leaf("a"), leaf("b")}));
  // a and b take both target columns; x and y are left over
  const ReorderResult r = sibling_reorder(ExactSimilarity{}, s, t);
  std::vector<std::string> order;
  for (const AtNode& c : r.tree.root().children) order.push_back(c.label);
  EXPECT_EQ(order, (std::vector<std::string>{"a", "b", "x", "y"}));
}

TEST(SiblingReorder, IdempotentAndPreservesFamilies) {
  const auto trees = support::corpus();
  const LevenshteinSimilarity lev;
  for (const AttackTree& s : trees) {
    for (const AttackTree& t : trees) {
      const AttackTree once = sibling_reorder(lev, s, t).tree;
      EXPECT_EQ(sibling_reorder(lev, once, t).tree, once);
      EXPECT_EQ(families(once), families(s));
      EXPECT_EQ(once.size(), s.size());
    }
  }
}

TEST(SiblingReorder, MappingIdsPointAtReorderedCopy) {
  std::mt19937 rng(99);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
  for (int k = 0; k < 100; ++k) {
    const AttackTree s = support::random_tree(rng, 1 + k % 10, alphabet);
    const AttackTree t = support::random_tree(rng, 1 + (k * 7) % 10, alphabet);
    const ReorderResult r = sibling_reorder(ExactSimilarity{}, s, t);
    const auto ps = r.tree.postorder(), pt = t.postorder();
    for (const MappedPair& p : r.mapping.pairs) {
      ASSERT_GE(p.source, 1u);
      ASSERT_LE(p.source, ps.size());
      ASSERT_GE(p.target, 1u);
      ASSERT_LE(p.target, pt.size());
      EXPECT_EQ(p.similarity, ps[p.source - 1]->label == pt[p.target - 1]->label ? 1.0 : 0.0);
    }
  }
}
