#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atdist/error.hpp"
#include "atdist/similarity.hpp"
#include "atdist/ted.hpp"
#include "atdist/tree.hpp"

namespace atdist {

// Exhaustive ordered forest edit distance by rightmost-root decomposition,
// memoized on forest identity. Shares only the cost definition with
// zs_distance, none of the keyroot machinery; used as a test oracle.

inline constexpr std::size_t kBruteForceMaxNodes = 8;

template <SimilarityProvider P>
double brute_force_ted(const CostConfig& cfg, const P& provider, Epsilon eps, const AttackTree& t1,
                       const AttackTree& t2) {
  if (t1.size() > kBruteForceMaxNodes || t2.size() > kBruteForceMaxNodes) {
    throw Error("brute_force_ted supports at most " + std::to_string(kBruteForceMaxNodes) + " nodes per tree");
  }
  using Forest = std::vector<const AtNode*>;
  std::map<std::pair<Forest, Forest>, double> memo;

  const auto change_cost = [&](const AtNode& x, const AtNode& y) {
    const double sim = std::clamp(static_cast<double>(provider.similarity(x.label, y.label)), 0.0, 1.0);
    double c = equivalent(sim, eps) ? 0.0 : cfg.c_label_change();
    if (!x.is_leaf() && !y.is_leaf() && x.refinement != y.refinement) c += cfg.gamma_delta();
    return c;
  };
  const auto count = [](const Forest& f) {
    std::size_t n = 0;
    std::vector<const AtNode*> stack(f.begin(), f.end());
    while (!stack.empty()) {
      const AtNode* v = stack.back();
      stack.pop_back();
      ++n;
      for (const AtNode& c : v->children) stack.push_back(&c);
    }
    return static_cast<double>(n);
  };
  const auto children_of = [](const AtNode* v) {
    Forest out;
    for (const AtNode& c : v->children) out.push_back(&c);
    return out;
  };

  std::function<double(const Forest&, const Forest&)> dist = [&](const Forest& f, const Forest& g) -> double {
    if (f.empty()) return count(g) * cfg.c_add();
    if (g.empty()) return count(f) * cfg.c_remove();
    const auto key = std::make_pair(f, g);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const AtNode* v = f.back();
    const AtNode* w = g.back();
    Forest f_minus_root(f.begin(), f.end() - 1), g_minus_root(g.begin(), g.end() - 1);
    Forest f_promoted = f_minus_root, g_promoted = g_minus_root;
    for (const AtNode& c : v->children) f_promoted.push_back(&c);
    for (const AtNode& c : w->children) g_promoted.push_back(&c);

    const double remove_v = dist(f_promoted, g) + cfg.c_remove();
    const double add_w = dist(f, g_promoted) + cfg.c_add();
    const double map_vw = dist(f_minus_root, g_minus_root) + dist(children_of(v), children_of(w)) +
                          change_cost(*v, *w);
    const double best = std::min({remove_v, add_w, map_vw});
    memo.emplace(key, best);
    return best;
  };
  return dist(Forest{&t1.root()}, Forest{&t2.root()});
}

}  // namespace atdist
