#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace shiftpd {

// Immutable rooted binary tree: a leaf or an internal node with a left and a
// right child. Subtrees are shared.
class BinaryTree {
 public:
  BinaryTree();  // a single leaf
  static BinaryTree leaf() { return BinaryTree(); }
  static BinaryTree join(const BinaryTree& left, const BinaryTree& right);
  // Inverse of encoding(): "L" or "(<left>,<right>)".
  static BinaryTree parse(std::string_view text);

  bool is_leaf() const { return node_->left == nullptr; }
  BinaryTree left() const;
  BinaryTree right() const;
  std::size_t leaves() const { return node_->leaves; }
  std::size_t height() const;

  // "L" for a leaf, "(ls,rs)" for an internal node; injective.
  std::string encoding() const;
  // leaves(left) <= leaves(right) at every internal node.
  bool is_right_heavy() const;

  friend bool operator==(const BinaryTree& a, const BinaryTree& b);

 private:
  struct Node {
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t leaves = 1;
  };
  explicit BinaryTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node* a, const Node* b);

  std::shared_ptr<const Node> node_;
};

// The swap rule of the canonical form: children (l, r) are exchanged iff
// leaves(l) > leaves(r), or the counts tie and enc(l) > enc(r).
bool canonical_swap(std::size_t left_leaves, const std::string& left_enc, std::size_t right_leaves,
                    const std::string& right_enc);

// Right-heavy representative of t's isomorphism class, with ties broken by
// the encoding so that isomorphic trees map to the same tree.
BinaryTree canonical_tree(const BinaryTree& t);

// Every ordered binary tree with exactly `leaves` leaves (Catalan many).
std::vector<BinaryTree> all_binary_trees(std::size_t leaves);

// Right caterpillar: each internal node has a leaf on the left.
BinaryTree caterpillar(std::size_t leaves);
// Balanced split: left gets floor(n/2) leaves.
BinaryTree balanced_tree(std::size_t leaves);

}  // namespace shiftpd
