#include "shiftpd/binary_tree.hpp"

#include <algorithm>
#include <utility>

#include "shiftpd/errors.hpp"

namespace shiftpd {

BinaryTree::BinaryTree() : node_(std::make_shared<const Node>()) {}

BinaryTree BinaryTree::join(const BinaryTree& left, const BinaryTree& right) {
  auto n = std::make_shared<Node>();
  n->left = left.node_;
  n->right = right.node_;
  n->leaves = left.leaves() + right.leaves();
  return BinaryTree(std::move(n));
}

BinaryTree BinaryTree::left() const {
  if (is_leaf()) throw DomainError("leaf has no children");
  return BinaryTree(node_->left);
}

BinaryTree BinaryTree::right() const {
  if (is_leaf()) throw DomainError("leaf has no children");
  return BinaryTree(node_->right);
}

std::size_t BinaryTree::height() const {
  if (is_leaf()) return 0;
  return 1 + std::max(left().height(), right().height());
}

std::string BinaryTree::encoding() const {
  if (is_leaf()) return "L";
  return "(" + left().encoding() + "," + right().encoding() + ")";
}

bool BinaryTree::is_right_heavy() const {
  if (is_leaf()) return true;
  return left().leaves() <= right().leaves() && left().is_right_heavy() && right().is_right_heavy();
}

bool BinaryTree::equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a->leaves != b->leaves) return false;
  if ((a->left == nullptr) != (b->left == nullptr)) return false;
  if (a->left == nullptr) return true;
  return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
}

bool operator==(const BinaryTree& a, const BinaryTree& b) { return BinaryTree::equal(a.node_.get(), b.node_.get()); }

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}
  BinaryTree run() {
    BinaryTree t = parse();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

 private:
  BinaryTree parse() {
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == 'L') {
      ++pos_;
      return BinaryTree::leaf();
    }
    expect('(');
    BinaryTree l = parse();
    expect(',');
    BinaryTree r = parse();
    expect(')');
    return BinaryTree::join(l, r);
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("tree text, offset " + std::to_string(pos_) + ": " + msg);
  }
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::pair<BinaryTree, std::string> canonicalize(const BinaryTree& t) {
  if (t.is_leaf()) return {t, "L"};
  auto l = canonicalize(t.left());
  auto r = canonicalize(t.right());
  if (canonical_swap(l.first.leaves(), l.second, r.first.leaves(), r.second)) std::swap(l, r);
  std::string enc = "(" + l.second + "," + r.second + ")";
  return {BinaryTree::join(l.first, r.first), std::move(enc)};
}

}  // namespace

BinaryTree BinaryTree::parse(std::string_view text) { return TreeParser(text).run(); }

bool canonical_swap(std::size_t left_leaves, const std::string& left_enc, std::size_t right_leaves,
                    const std::string& right_enc) {
  if (left_leaves != right_leaves) return left_leaves > right_leaves;
  return left_enc > right_enc;
}

BinaryTree canonical_tree(const BinaryTree& t) { return canonicalize(t).first; }

std::vector<BinaryTree> all_binary_trees(std::size_t leaves) {
  std::vector<std::vector<BinaryTree>> by(leaves + 1);
  if (leaves == 0) return {};
  by[1] = {BinaryTree::leaf()};
  for (std::size_t n = 2; n <= leaves; ++n) {
    for (std::size_t a = 1; a < n; ++a) {
      for (const auto& l : by[a]) {
        for (const auto& r : by[n - a]) by[n].push_back(BinaryTree::join(l, r));
      }
    }
  }
  return by[leaves];
}

BinaryTree caterpillar(std::size_t leaves) {
  if (leaves == 0) throw DomainError("a tree has at least one leaf");
  BinaryTree t;
  for (std::size_t i = 1; i < leaves; ++i) t = BinaryTree::join(BinaryTree::leaf(), t);
  return t;
}

BinaryTree balanced_tree(std::size_t leaves) {
  if (leaves == 0) throw DomainError("a tree has at least one leaf");
  if (leaves == 1) return BinaryTree::leaf();
  return BinaryTree::join(balanced_tree(leaves / 2), balanced_tree(leaves - leaves / 2));
}

}  // namespace shiftpd
