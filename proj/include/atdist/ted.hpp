#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atdist/error.hpp"
#include "atdist/mapping.hpp"
#include "atdist/ops.hpp"
#include "atdist/similarity.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// Edit costs. A change costs c_label_change when the labels are not
/// equivalent plus gamma_delta when both nodes are internal and their
/// refinements differ. A change may never cost more than remove + add.
class CostConfig {
 public:
  CostConfig() = default;
  CostConfig(double c_remove, double c_add, double c_label_change, double gamma_delta)
      : c_remove_(c_remove), c_add_(c_add), c_label_change_(c_label_change), gamma_delta_(gamma_delta) {
    for (double c : {c_remove, c_add, c_label_change, gamma_delta}) {
      if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("edit costs must be finite and non-negative");
    }
    if (gamma_delta > c_remove + c_add) {
      throw ConfigError("gamma_delta " + std::to_string(gamma_delta) +
                        " exceeds c_remove + c_add = " + std::to_string(c_remove + c_add));
    }
    if (c_label_change > c_remove + c_add) {
      throw ConfigError("c_label_change " + std::to_string(c_label_change) +
                        " exceeds c_remove + c_add = " + std::to_string(c_remove + c_add));
    }
  }
  static CostConfig with_gamma(double gamma_delta) { return CostConfig(1.0, 1.0, 1.0, gamma_delta); }

  double c_remove() const noexcept { return c_remove_; }
  double c_add() const noexcept { return c_add_; }
  double c_label_change() const noexcept { return c_label_change_; }
  double gamma_delta() const noexcept { return gamma_delta_; }

 private:
  double c_remove_ = 1.0;
  double c_add_ = 1.0;
  double c_label_change_ = 1.0;
  double gamma_delta_ = 0.5;
};

struct EditOp {
  OpKind kind = OpKind::Match;
  NodeId source = kLambda;
  NodeId target = kLambda;
  std::string source_label;
  std::string target_label;
  bool label_changed = false;
  bool refinement_changed = false;
  double cost = 0.0;
};

struct TedResult {
  double distance = 0.0;
  std::vector<EditOp> script;
  bool reordered = false;
  std::optional<AttackTree> reordered_source;  // set when `reordered`; script ids refer to it

  OpCounts ops() const {
    OpCounts c;
    for (const EditOp& op : script) c.record(op.kind);
    return c;
  }
};

enum class ReorderMode { Off, On, Min };

inline std::string_view to_string(ReorderMode m) {
  switch (m) {
    case ReorderMode::Off: return "off";
    case ReorderMode::On: return "on";
    case ReorderMode::Min: return "min";
  }
  return "?";
}

namespace detail {

/// Postorder arrays for Zhang-Shasha: 1-based node table, leftmost leaf
/// descendant per node, and the keyroots in increasing order.
struct ZsIndex {
  std::vector<const AtNode*> node;  // node[0] unused
  std::vector<std::size_t> lml;
  std::vector<std::size_t> keyroots;

  explicit ZsIndex(const AttackTree& t) {
    const auto post = t.postorder();
    const std::size_t n = post.size();
    node.assign(n + 1, nullptr);
    lml.assign(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
      node[i] = post[i - 1];
      lml[i] = node[i]->is_leaf() ? i : lml[node[i]->children.front().node_id];
    }
    std::vector<bool> seen(n + 2, false);
    for (std::size_t i = n; i >= 1; --i) {
      if (!seen[lml[i]]) {
        keyroots.push_back(i);
        seen[lml[i]] = true;
      }
    }
    std::reverse(keyroots.begin(), keyroots.end());
  }
  std::size_t size() const noexcept { return node.size() - 1; }
};

inline bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-9; }

}  // namespace detail

/// Ordered Zhang-Shasha tree edit distance with threshold-gated label
/// replacement and refinement-change cost, plus the recovered edit script.
template <SimilarityProvider P>
TedResult zs_distance(const CostConfig& cfg, const P& provider, Epsilon eps, const AttackTree& t1,
                      const AttackTree& t2) {
  const detail::ZsIndex a(t1), b(t2);
  const std::size_t n1 = a.size(), n2 = b.size();

  // Per-pair change cost and its two components.
  std::vector<char> label_eq((n1 + 1) * (n2 + 1), 0), ref_diff((n1 + 1) * (n2 + 1), 0);
  std::vector<double> change((n1 + 1) * (n2 + 1), 0.0);
  const auto at = [n2](std::size_t i, std::size_t j) { return i * (n2 + 1) + j; };
  for (std::size_t i = 1; i <= n1; ++i) {
    for (std::size_t j = 1; j <= n2; ++j) {
      const AtNode& x = *a.node[i];
      const AtNode& y = *b.node[j];
      const double sim = std::clamp(static_cast<double>(provider.similarity(x.label, y.label)), 0.0, 1.0);
      label_eq[at(i, j)] = equivalent(sim, eps);
      ref_diff[at(i, j)] = !x.is_leaf() && !y.is_leaf() && x.refinement != y.refinement;
      change[at(i, j)] = (label_eq[at(i, j)] ? 0.0 : cfg.c_label_change()) +
                         (ref_diff[at(i, j)] ? cfg.gamma_delta() : 0.0);
    }
  }

  std::vector<double> td((n1 + 1) * (n2 + 1), 0.0);
  std::vector<double> fd;

  // Fills the forest table for the subtrees rooted at i and j; `fd` is
  // (i - l(i) + 2) x (j - l(j) + 2), row-major.
  const auto forest = [&](std::size_t i, std::size_t j, bool store) {
    const std::size_t ioff = a.lml[i] - 1, joff = b.lml[j] - 1;
    const std::size_t rows = i - ioff + 1, cols = j - joff + 1;
    fd.assign(rows * cols, 0.0);
    const auto f = [&](std::size_t x, std::size_t y) -> double& { return fd[x * cols + y]; };
    for (std::size_t x = 1; x < rows; ++x) f(x, 0) = f(x - 1, 0) + cfg.c_remove();
    for (std::size_t y = 1; y < cols; ++y) f(0, y) = f(0, y - 1) + cfg.c_add();
    for (std::size_t x = 1; x < rows; ++x) {
      for (std::size_t y = 1; y < cols; ++y) {
        const std::size_t di = x + ioff, dj = y + joff;
        const double del = f(x - 1, y) + cfg.c_remove();
        const double ins = f(x, y - 1) + cfg.c_add();
        if (a.lml[di] == a.lml[i] && b.lml[dj] == b.lml[j]) {
          f(x, y) = std::min({del, ins, f(x - 1, y - 1) + change[at(di, dj)]});
          if (store) td[at(di, dj)] = f(x, y);
        } else {
          const std::size_t p = a.lml[di] - 1 - ioff, q = b.lml[dj] - 1 - joff;
          f(x, y) = std::min({del, ins, f(p, q) + td[at(di, dj)]});
        }
      }
    }
    return cols;
  };

  for (std::size_t i : a.keyroots) {
    for (std::size_t j : b.keyroots) forest(i, j, true);
  }

  TedResult result;
  result.distance = td[at(n1, n2)];

  // Backtrack. Each stack entry is a subtree pair whose forest table is
  // recomputed; mapped subtree pairs found inside it are pushed.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{n1, n2}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    const std::size_t cols = forest(i, j, false);
    const std::size_t ioff = a.lml[i] - 1, joff = b.lml[j] - 1;
    const auto f = [&](std::size_t x, std::size_t y) { return fd[x * cols + y]; };
    std::size_t x = i - ioff, y = j - joff;
    while (x > 0 || y > 0) {
      const std::size_t di = x + ioff, dj = y + joff;
      if (x > 0 && y > 0) {
        if (a.lml[di] == a.lml[i] && b.lml[dj] == b.lml[j]) {
          if (detail::nearly_equal(f(x, y), f(x - 1, y - 1) + change[at(di, dj)])) {
            EditOp op;
            op.source = static_cast<NodeId>(di);
            op.target = static_cast<NodeId>(dj);
            op.source_label = a.node[di]->label;
            op.target_label = b.node[dj]->label;
            op.label_changed = !label_eq[at(di, dj)];
            op.refinement_changed = ref_diff[at(di, dj)];
            op.cost = change[at(di, dj)];
            op.kind = (op.label_changed || op.refinement_changed) ? OpKind::Change : OpKind::Match;
            result.script.push_back(std::move(op));
            --x;
            --y;
            continue;
          }
        } else {
          const std::size_t p = a.lml[di] - 1 - ioff, q = b.lml[dj] - 1 - joff;
          if (detail::nearly_equal(f(x, y), f(p, q) + td[at(di, dj)])) {
            stack.emplace_back(di, dj);
            x = p;
            y = q;
            continue;
          }
        }
      }
      if (x > 0 && detail::nearly_equal(f(x, y), f(x - 1, y) + cfg.c_remove())) {
        result.script.push_back({OpKind::Remove, static_cast<NodeId>(di), kLambda, a.node[di]->label, {},
                                 false, false, cfg.c_remove()});
        --x;
        continue;
      }
      result.script.push_back({OpKind::Add, kLambda, static_cast<NodeId>(dj), {}, b.node[dj]->label,
                               false, false, cfg.c_add()});
      --y;
    }
  }

  std::sort(result.script.begin(), result.script.end(), [](const EditOp& p, const EditOp& q) {
    const auto key = [](const EditOp& o) {
      return std::pair{o.source == kLambda ? std::numeric_limits<NodeId>::max() : o.source, o.target};
    };
    return key(p) < key(q);
  });
  return result;
}

/// Runs the ordered distance on the original source and on the
/// sibling-reordered source and keeps the smaller (ties keep the original).
template <SimilarityProvider P>
TedResult ted_with_reorder(const CostConfig& cfg, const P& provider, Epsilon eps, const AttackTree& t1,
                           const AttackTree& t2, ReorderMode mode = ReorderMode::Min) {
  if (mode == ReorderMode::Off) return zs_distance(cfg, provider, eps, t1, t2);
  ReorderResult flipped = sibling_reorder(provider, t1, t2);
  TedResult with = zs_distance(cfg, provider, eps, flipped.tree, t2);
  with.reordered = true;
  with.reordered_source = std::move(flipped.tree);
  if (mode == ReorderMode::On) return with;
  TedResult without = zs_distance(cfg, provider, eps, t1, t2);
  if (with.distance < without.distance - 1e-12) return with;
  return without;
}

}  // namespace atdist
