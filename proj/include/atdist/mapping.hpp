#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "atdist/similarity.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// One argmax extraction: row `row` and column `col` were removed together.
struct GreedyStep {
  std::size_t row;
  std::size_t col;
  double similarity;
};

struct GreedyPairing {
  std::vector<GreedyStep> steps;       // in extraction order
  std::vector<std::size_t> free_rows;  // rows never extracted, ascending
  std::vector<std::size_t> free_cols;
};

/// Repeatedly takes the largest remaining entry and deletes its row and
/// column. Ties go to the smallest row, then the smallest column, in the
/// original matrix coordinates. The pairing does not depend on any threshold.
/// Entries below `floor` are never extracted.
inline GreedyPairing greedy_pairing(const SimilarityMatrix& m,
                                    double floor = -std::numeric_limits<double>::infinity()) {
  struct Cell {
    double sim;
    std::size_t row, col;
  };
  std::vector<Cell> cells;
  cells.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) >= floor) cells.push_back({m(i, j), i, j});
    }
  }
  // Deleting a row/column never changes the other entries, so sweeping the
  // cells in (value desc, row asc, col asc) order replays the argmax loop.
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.sim > b.sim; });

  GreedyPairing out;
  std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (const Cell& c : cells) {
    if (out.steps.size() == limit) break;
    if (row_used[c.row] || col_used[c.col]) continue;
    row_used[c.row] = col_used[c.col] = true;
    out.steps.push_back({c.row, c.col, c.sim});
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!row_used[i]) out.free_rows.push_back(i);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!col_used[j]) out.free_cols.push_back(j);
  }
  return out;
}

/// (source, target, similarity) with kLambda on one side for add/remove.
struct MappedPair {
  NodeId source = kLambda;
  NodeId target = kLambda;
  double similarity = 0.0;
  bool operator==(const MappedPair&) const = default;
};

struct NodeMapping {
  std::vector<MappedPair> pairs;

  std::size_t matched() const {
    return static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const MappedPair& p) {
      return p.source != kLambda && p.target != kLambda;
    }));
  }
};

/// Greedy argmax mapping gated by ε: an extracted pair above the threshold is
/// mapped, otherwise both nodes map to Λ. Unextracted nodes map to Λ.
template <SimilarityProvider P>
NodeMapping greedy_map(const P& provider, Epsilon eps, const std::vector<const AtNode*>& a,
                       const std::vector<const AtNode*>& b) {
  std::vector<std::string> la, lb;
  for (const AtNode* n : a) la.push_back(n->label);
  for (const AtNode* n : b) lb.push_back(n->label);
  const GreedyPairing g = greedy_pairing(similarity_matrix(provider, la, lb));

  NodeMapping out;
  for (const GreedyStep& s : g.steps) {
    if (equivalent(s.similarity, eps)) {
      out.pairs.push_back({a[s.row]->node_id, b[s.col]->node_id, s.similarity});
    } else {
      out.pairs.push_back({a[s.row]->node_id, kLambda, 0.0});
      out.pairs.push_back({kLambda, b[s.col]->node_id, 0.0});
    }
  }
  for (std::size_t i : g.free_rows) out.pairs.push_back({a[i]->node_id, kLambda, 0.0});
  for (std::size_t j : g.free_cols) out.pairs.push_back({kLambda, b[j]->node_id, 0.0});
  return out;
}

struct ReorderResult {
  AttackTree tree;      // reordered copy of the source tree
  NodeMapping mapping;  // ids refer to the reordered copy and the target
};

/// Node flipping: walks both trees top-down from the (always mapped) roots,
/// pairs children by greedy argmax similarity and permutes the source's
/// children so that each mapped child sits at its partner's index. Children
/// left unmapped keep their relative order after the mapped ones. The
/// target is never modified.
template <SimilarityProvider P>
ReorderResult sibling_reorder(const P& provider, const AttackTree& source, const AttackTree& target) {
  struct Item {
    AtNode* s;
    const AtNode* t;
    std::vector<std::size_t> path;  // child indices from the root of the copy
    double similarity;
  };
  AtNode copy = source.root();
  std::vector<Item> mapped;
  std::deque<Item> work;
  work.push_back({&copy, &target.root(), {}, provider.similarity(copy.label, target.root().label)});

  while (!work.empty()) {
    Item item = std::move(work.front());
    work.pop_front();
    AtNode* s = item.s;
    const AtNode* t = item.t;
    mapped.push_back(item);
    if (s->children.empty() || t->children.empty()) continue;

    std::vector<std::string> ls, lt;
    for (const AtNode& c : s->children) ls.push_back(c.label);
    for (const AtNode& c : t->children) lt.push_back(c.label);
    const GreedyPairing g = greedy_pairing(similarity_matrix(provider, ls, lt));

    std::vector<GreedyStep> by_target = g.steps;
    std::sort(by_target.begin(), by_target.end(),
              [](const GreedyStep& x, const GreedyStep& y) { return x.col < y.col; });
    std::vector<std::size_t> order;
    for (const GreedyStep& st : by_target) order.push_back(st.row);
    for (std::size_t r : g.free_rows) order.push_back(r);

    std::vector<AtNode> permuted;
    permuted.reserve(order.size());
    for (std::size_t r : order) permuted.push_back(std::move(s->children[r]));
    s->children = std::move(permuted);

    for (std::size_t k = 0; k < by_target.size(); ++k) {
      std::vector<std::size_t> path = item.path;
      path.push_back(k);
      work.push_back({&s->children[k], &t->children[by_target[k].col], std::move(path),
                      by_target[k].similarity});
    }
  }

  ReorderResult out{AttackTree(std::move(copy), source.source_name()), {}};
  for (const Item& m : mapped) {
    const AtNode* n = &out.tree.root();
    for (std::size_t k : m.path) n = &n->children[k];
    out.mapping.pairs.push_back({n->node_id, m.t->node_id, m.similarity});
  }
  return out;
}

}  // namespace atdist
