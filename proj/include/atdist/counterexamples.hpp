#pragma once

#include <array>
#include <string>
#include <string_view>

#include "atdist/error.hpp"
#include "atdist/tree.hpp"

namespace atdist {

// The base tree R:OR(I:OR(A,B), J:AND(C,D)) and twelve single-edit variants
// used to sanity-check the distance measures.

inline constexpr std::array<std::string_view, 13> kCounterexampleNames = {
    "base",          "order-reversed",       "refinements-switched", "extra-intermediate",
    "missing-intermediate", "extra-leaf",    "missing-leaf",         "changed-root",
    "changed-intermediate", "changed-leaf",  "move-adjacent",        "move-up",
    "move-down"};

inline AttackTree build_counterexample(std::string_view name) {
  using R = Refinement;
  const auto I = [](std::vector<AtNode> kids, R r = R::Or) { return node("I", r, std::move(kids)); };
  const auto J = [](std::vector<AtNode> kids, R r = R::And) { return node("J", r, std::move(kids)); };
  const auto root = [](std::vector<AtNode> kids, std::string label = "R") {
    return node(std::move(label), R::Or, std::move(kids));
  };
  const auto A = leaf("A"), B = leaf("B"), C = leaf("C"), D = leaf("D"), E = leaf("E");

  AtNode r;
  if (name == "base") {
    r = root({I({A, B}), J({C, D})});
  } else if (name == "order-reversed") {
    r = root({J({D, C}), I({B, A})});
  } else if (name == "refinements-switched") {
    r = root({I({A, B}, R::And), J({C, D}, R::Or)});
  } else if (name == "extra-intermediate") {
    r = root({node("K", R::Or, {I({A, B})}), J({C, D})});
  } else if (name == "missing-intermediate") {
    r = root({A, B, J({C, D})});
  } else if (name == "extra-leaf") {
    r = root({I({A, B, E}), J({C, D})});
  } else if (name == "missing-leaf") {
    r = root({I({A}), J({C, D})});
  } else if (name == "changed-root") {
    r = root({I({A, B}), J({C, D})}, "Z");
  } else if (name == "changed-intermediate") {
    r = root({node("K", R::Or, {A, B}), J({C, D})});
  } else if (name == "changed-leaf") {
    r = root({I({E, B}), J({C, D})});
  } else if (name == "move-adjacent") {
    r = root({I({A}), J({B, C, D})});
  } else if (name == "move-up") {
    r = root({I({A}), B, J({C, D})});
  } else if (name == "move-down") {
    r = root({I({node("A", R::Or, {B})}), J({C, D})});
  } else {
    throw Error("unknown counterexample \"" + std::string(name) + "\"");
  }
  return AttackTree(std::move(r), std::string(name));
}

}  // namespace atdist
