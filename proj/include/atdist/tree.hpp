#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atdist/error.hpp"

namespace atdist {

/// Node connective. Leaves carry OR; their refinement never costs anything.
enum class Refinement : std::uint8_t { And, Or };

inline std::string_view to_string(Refinement r) {
  return r == Refinement::And ? "AND" : "OR";
}

/// Postorder position of a node, 1-based. 0 stands for the empty node (Λ).
using NodeId = std::uint32_t;
inline constexpr NodeId kLambda = 0;

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct AtNode {
  std::string label;
  Refinement refinement = Refinement::Or;
  std::vector<AtNode> children;
  NodeId node_id = kLambda;

  bool is_leaf() const noexcept { return children.empty(); }
  bool operator==(const AtNode&) const = default;
};

inline AtNode leaf(std::string label) {
  return AtNode{std::move(label), Refinement::Or, {}, kLambda};
}

inline AtNode node(std::string label, Refinement r, std::vector<AtNode> children) {
  return AtNode{std::move(label), r, std::move(children), kLambda};
}

namespace detail {

template <typename Node, typename Fn>
void visit_postorder(Node& n, Fn&& fn) {
  // Iterative so that degenerate chains do not exhaust the stack.
  std::vector<std::pair<Node*, std::size_t>> stack{{&n, 0}};
  while (!stack.empty()) {
    auto& [cur, next] = stack.back();
    if (next < cur->children.size()) {
      Node* child = &cur->children[next++];
      stack.emplace_back(child, 0);
    } else {
      Node* done = cur;
      stack.pop_back();
      fn(*done);
    }
  }
}

}  // namespace detail

/// Immutable rooted attack tree. Construction trims labels, rejects empty
/// ones and numbers nodes 1..n in left-to-right postorder.
class AttackTree {
 public:
  explicit AttackTree(AtNode root, std::string source_name = {})
      : root_(std::move(root)), source_name_(std::move(source_name)) {
    NodeId next = 0;
    detail::visit_postorder(root_, [&](AtNode& n) {
      n.label = std::string(trim(n.label));
      if (n.label.empty()) throw ParseError("node with empty label");
      n.node_id = ++next;
    });
    size_ = next;
  }

  const AtNode& root() const noexcept { return root_; }
  std::size_t size() const noexcept { return size_; }
  const std::string& source_name() const noexcept { return source_name_; }
  void set_source_name(std::string name) { source_name_ = std::move(name); }

  /// Nodes in left-to-right postorder; the root is last.
  std::vector<const AtNode*> postorder() const {
    std::vector<const AtNode*> out;
    out.reserve(size_);
    detail::visit_postorder(root_, [&](const AtNode& n) { out.push_back(&n); });
    return out;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(size_);
    for (const AtNode* n : postorder()) out.push_back(n->label);
    return out;
  }

  std::size_t internal_count() const {
    std::size_t k = 0;
    for (const AtNode* n : postorder()) k += n->is_leaf() ? 0 : 1;
    return k;
  }

  /// Structural equality: labels, refinements and child order.
  bool operator==(const AttackTree& other) const { return root_ == other.root_; }

 private:
  AtNode root_;
  std::size_t size_ = 0;
  std::string source_name_;
};

/// Re-checks the invariants a constructed tree must satisfy. Returns a list
/// of problems; empty means valid.
inline std::vector<std::string> validate(const AttackTree& tree) {
  std::vector<std::string> problems;
  const auto nodes = tree.postorder();
  if (nodes.size() != tree.size()) {
    problems.push_back("size " + std::to_string(tree.size()) + " but " +
                       std::to_string(nodes.size()) + " reachable nodes");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const AtNode& n = *nodes[i];
    if (n.node_id != i + 1) {
      problems.push_back("node \"" + n.label + "\" has id " + std::to_string(n.node_id) +
                         ", expected postorder index " + std::to_string(i + 1));
    }
    if (trim(n.label).empty()) problems.push_back("empty label at postorder index " +
                                                  std::to_string(i + 1));
    for (const AtNode& c : n.children) {
      if (c.node_id >= n.node_id) {
        problems.push_back("child \"" + c.label + "\" not before parent \"" + n.label +
                           "\" in postorder");
      }
    }
  }
  if (!nodes.empty() && nodes.back() != &tree.root()) {
    problems.push_back("root is not last in postorder");
  }
  return problems;
}

/// Adjacency-list description of a tree, as found in external fixtures
/// that reference children by index. May be corrupt.
struct FlatNode {
  std::string label;
  Refinement refinement = Refinement::Or;
  std::vector<std::size_t> children;
};

/// Builds a tree from an adjacency list, rejecting cycles, shared children,
/// dangling indices and unreachable nodes.
inline AttackTree from_flat(const std::vector<FlatNode>& flat, std::size_t root,
                            std::string source_name = {}) {
  if (root >= flat.size()) throw ParseError("root index out of range");
  enum class Mark : std::uint8_t { None, Active, Done };
  std::vector<Mark> mark(flat.size(), Mark::None);

  std::function<AtNode(std::size_t)> build = [&](std::size_t i) -> AtNode {
    if (mark[i] == Mark::Active) {
      throw ParseError("cycle through node " + std::to_string(i) + " (\"" + flat[i].label + "\")");
    }
    if (mark[i] == Mark::Done) {
      throw ParseError("node " + std::to_string(i) + " (\"" + flat[i].label +
                       "\") has more than one parent");
    }
    mark[i] = Mark::Active;
    AtNode n{flat[i].label, flat[i].refinement, {}, kLambda};
    for (std::size_t c : flat[i].children) {
      if (c >= flat.size()) throw ParseError("child index " + std::to_string(c) + " out of range");
      n.children.push_back(build(c));
    }
    mark[i] = Mark::Done;
    return n;
  };
  AtNode r = build(root);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (mark[i] != Mark::Done) {
      throw ParseError("node " + std::to_string(i) + " (\"" + flat[i].label +
                       "\") is unreachable from the root");
    }
  }
  return AttackTree(std::move(r), std::move(source_name));
}

}  // namespace atdist
