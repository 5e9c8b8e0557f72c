#pragma once

#include <string>
#include <vector>

#include "atdist/mapping.hpp"
#include "atdist/ops.hpp"
#include "atdist/similarity.hpp"
#include "atdist/tree.hpp"

namespace atdist {

struct LabelDistanceResult {
  double distance = 0.0;
  NodeMapping mapping;
  OpCounts ops;
};

/// Structure-free distance over the two label multisets. Every extracted
/// pair below ε costs 1 (one change), every label left over costs 1
/// (remove from t1 / add from t2). Equals max(|t1|, |t2|) - matched.
template <SimilarityProvider P>
LabelDistanceResult label_distance(const P& provider, Epsilon eps, const AttackTree& t1, const AttackTree& t2) {
  const auto a = t1.postorder();
  const auto b = t2.postorder();
  std::vector<std::string> la, lb;
  for (const AtNode* n : a) la.push_back(n->label);
  for (const AtNode* n : b) lb.push_back(n->label);
  const GreedyPairing g = greedy_pairing(similarity_matrix(provider, la, lb));

  LabelDistanceResult out;
  for (const GreedyStep& s : g.steps) {
    if (equivalent(s.similarity, eps)) {
      out.mapping.pairs.push_back({a[s.row]->node_id, b[s.col]->node_id, s.similarity});
      out.ops.record(OpKind::Match);
    } else {
      out.mapping.pairs.push_back({a[s.row]->node_id, kLambda, 0.0});
      out.mapping.pairs.push_back({kLambda, b[s.col]->node_id, 0.0});
      out.ops.record(OpKind::Change);
      out.distance += 1.0;
    }
  }
  for (std::size_t i : g.free_rows) {
    out.mapping.pairs.push_back({a[i]->node_id, kLambda, 0.0});
    out.ops.record(OpKind::Remove);
    out.distance += 1.0;
  }
  for (std::size_t j : g.free_cols) {
    out.mapping.pairs.push_back({kLambda, b[j]->node_id, 0.0});
    out.ops.record(OpKind::Add);
    out.distance += 1.0;
  }
  return out;
}

}  // namespace atdist
