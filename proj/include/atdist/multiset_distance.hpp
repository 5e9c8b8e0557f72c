#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "atdist/error.hpp"
#include "atdist/mapping.hpp"
#include "atdist/ops.hpp"
#include "atdist/similarity.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// Multiset of leaf labels, kept sorted.
using AttackSuite = std::vector<std::string>;
using SuiteSet = std::set<AttackSuite>;

inline constexpr std::size_t kDefaultSuiteCap = 10000;

namespace detail {

inline SuiteSet suites_of(const AtNode& n, std::size_t cap) {
  if (n.is_leaf()) return SuiteSet{AttackSuite{n.label}};
  SuiteSet acc;
  if (n.refinement == Refinement::Or) {
    for (const AtNode& c : n.children) {
      SuiteSet sub = suites_of(c, cap);
      acc.insert(sub.begin(), sub.end());
      if (acc.size() > cap) break;
    }
  } else {
    acc.insert(AttackSuite{});
    for (const AtNode& c : n.children) {
      const SuiteSet sub = suites_of(c, cap);
      SuiteSet next;
      for (const AttackSuite& x : acc) {
        for (const AttackSuite& y : sub) {
          AttackSuite merged;
          merged.reserve(x.size() + y.size());
          std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(merged));
          next.insert(std::move(merged));
          if (next.size() > cap) break;
        }
        if (next.size() > cap) break;
      }
      acc = std::move(next);
      if (acc.size() > cap) break;
    }
  }
  if (acc.size() > cap) {
    throw Error("attack suite count under \"" + n.label + "\" exceeds the cap of " + std::to_string(cap));
  }
  return acc;
}

}  // namespace detail

/// Multiset semantics: a leaf is one singleton suite, OR unions its
/// children's suites and AND combines one suite from each child.
inline SuiteSet suites(const AttackTree& tree, std::size_t cap = kDefaultSuiteCap) {
  return detail::suites_of(tree.root(), cap);
}

struct MultisetDistanceResult {
  double distance = 0.0;  // suite operations: 1 per removed/added/changed suite
  double jaccard = 0.0;   // 1 - |matched| / |union|
  OpCounts ops;
};

/// Jaccard-style distance between suite sets where suites are equal when
/// their elements pair up one-to-one with every pair equivalent under ε.
///
/// Suites of equal size are paired by greedy argmax over the mean element
/// similarity (elements themselves paired greedily), which does not depend
/// on ε. A suite pair then counts as a match (all element pairs equivalent),
/// a change (exactly one pair not equivalent, cost 1) or a remove plus an
/// add (cost 2). Unpaired suites cost 1 each.
template <SimilarityProvider P>
MultisetDistanceResult multiset_distance(const P& provider, Epsilon eps, const AttackTree& t1,
                                         const AttackTree& t2, std::size_t cap = kDefaultSuiteCap) {
  const SuiteSet set1 = suites(t1, cap), set2 = suites(t2, cap);
  const std::vector<AttackSuite> s1(set1.begin(), set1.end()), s2(set2.begin(), set2.end());

  SimilarityMatrix score(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (s1[i].size() != s2[j].size()) {
        score(i, j) = -1.0;
        continue;
      }
      const GreedyPairing g = greedy_pairing(similarity_matrix(provider, s1[i], s2[j]));
      double sum = 0.0;
      for (const GreedyStep& st : g.steps) sum += st.similarity;
      score(i, j) = sum / static_cast<double>(s1[i].size());
    }
  }
  const GreedyPairing pairs = greedy_pairing(score, 0.0);

  MultisetDistanceResult out;
  std::size_t matched = 0;
  for (const GreedyStep& st : pairs.steps) {
    const GreedyPairing g = greedy_pairing(similarity_matrix(provider, s1[st.row], s2[st.col]));
    std::size_t differing = 0;
    for (const GreedyStep& e : g.steps) differing += equivalent(e.similarity, eps) ? 0 : 1;
    if (differing == 0) {
      out.ops.record(OpKind::Match);
      ++matched;
    } else if (differing == 1) {
      out.ops.record(OpKind::Change);
      out.distance += 1.0;
    } else {
      out.ops.record(OpKind::Remove);
      out.ops.record(OpKind::Add);
      out.distance += 2.0;
    }
  }
  out.ops.record(OpKind::Remove, pairs.free_rows.size());
  out.ops.record(OpKind::Add, pairs.free_cols.size());
  out.distance += static_cast<double>(pairs.free_rows.size() + pairs.free_cols.size());

  const std::size_t uni = s1.size() + s2.size() - matched;
  out.jaccard = uni == 0 ? 0.0 : 1.0 - static_cast<double>(matched) / static_cast<double>(uni);
  return out;
}

}  // namespace atdist
