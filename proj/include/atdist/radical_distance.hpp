#pragma once

#include <set>
#include <string>
#include <vector>

#include "atdist/mapping.hpp"
#include "atdist/ops.hpp"
#include "atdist/similarity.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// A one-level subtree: an internal node, its refinement and its children.
struct Radical {
  NodeId root = kLambda;
  std::string root_label;
  Refinement refinement = Refinement::Or;
  std::vector<std::string> child_labels;
};

/// One radical per internal node, in postorder of the radical roots.
struct RadicalDict {
  std::vector<Radical> radicals;

  std::set<std::string, std::less<>> keys() const {
    std::set<std::string, std::less<>> k;
    for (const Radical& r : radicals) k.insert(r.root_label);
    return k;
  }
};

inline RadicalDict decompose(const AttackTree& tree) {
  RadicalDict out;
  for (const AtNode* n : tree.postorder()) {
    if (n->is_leaf()) continue;
    Radical r{n->node_id, n->label, n->refinement, {}};
    for (const AtNode& c : n->children) r.child_labels.push_back(c.label);
    out.radicals.push_back(std::move(r));
  }
  return out;
}

struct RadicalPair {
  NodeId source = kLambda;
  NodeId target = kLambda;
  double cost = 0.0;  // root, refinement and child costs charged to this pair
};

struct RadicalDistanceResult {
  double distance = 0.0;
  OpCounts ops;
  std::vector<RadicalPair> pairs;  // includes Λ pairs for unmatched radicals
};

/// Radical distance. Radical roots are paired by greedy argmax similarity;
/// each pair costs 1 if its root labels are not equivalent and 0.5 if the
/// refinements differ. Child lists of a paired radical are paired the same
/// way: a child pair below ε costs 1 and a leftover child costs 1, except
/// that a child whose label is itself a radical key of its tree is skipped
/// (it is accounted for by its own radical). An unpaired radical costs 1 for
/// its root plus 1 per non-key child.
template <SimilarityProvider P>
RadicalDistanceResult radical_distance(const P& provider, Epsilon eps, const AttackTree& t1,
                                       const AttackTree& t2) {
  const RadicalDict d1 = decompose(t1), d2 = decompose(t2);
  const auto keys1 = d1.keys(), keys2 = d2.keys();

  std::vector<std::string> roots1, roots2;
  for (const Radical& r : d1.radicals) roots1.push_back(r.root_label);
  for (const Radical& r : d2.radicals) roots2.push_back(r.root_label);
  const GreedyPairing roots = greedy_pairing(similarity_matrix(provider, roots1, roots2));

  RadicalDistanceResult out;
  for (const GreedyStep& s : roots.steps) {
    const Radical& x = d1.radicals[s.row];
    const Radical& y = d2.radicals[s.col];
    double cost = 0.0;
    double root_cost = 0.0;
    if (!equivalent(s.similarity, eps)) root_cost += 1.0;
    if (x.refinement != y.refinement) root_cost += 0.5;
    out.ops.record(root_cost == 0.0 ? OpKind::Match : OpKind::Change);
    cost += root_cost;

    const GreedyPairing kids = greedy_pairing(similarity_matrix(provider, x.child_labels, y.child_labels));
    for (const GreedyStep& c : kids.steps) {
      if (keys1.count(x.child_labels[c.row]) || keys2.count(y.child_labels[c.col])) continue;
      if (equivalent(c.similarity, eps)) {
        out.ops.record(OpKind::Match);
      } else {
        out.ops.record(OpKind::Change);
        cost += 1.0;
      }
    }
    for (std::size_t p : kids.free_rows) {
      if (keys1.count(x.child_labels[p])) continue;
      out.ops.record(OpKind::Remove);
      cost += 1.0;
    }
    for (std::size_t q : kids.free_cols) {
      if (keys2.count(y.child_labels[q])) continue;
      out.ops.record(OpKind::Add);
      cost += 1.0;
    }
    out.pairs.push_back({x.root, y.root, cost});
    out.distance += cost;
  }

  const auto unpaired = [&out](const Radical& r, const auto& keys, OpKind kind, bool source_side) {
    double cost = 1.0;
    out.ops.record(kind);
    for (const std::string& c : r.child_labels) {
      if (keys.count(c)) continue;
      out.ops.record(kind);
      cost += 1.0;
    }
    out.pairs.push_back(source_side ? RadicalPair{r.root, kLambda, cost} : RadicalPair{kLambda, r.root, cost});
    out.distance += cost;
  };
  for (std::size_t i : roots.free_rows) unpaired(d1.radicals[i], keys1, OpKind::Remove, true);
  for (std::size_t j : roots.free_cols) unpaired(d2.radicals[j], keys2, OpKind::Add, false);
  return out;
}

}  // namespace atdist
