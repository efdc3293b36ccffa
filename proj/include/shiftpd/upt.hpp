#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shiftpd/binary_tree.hpp"
#include "shiftpd/formula.hpp"

namespace shiftpd {

struct ParseTreeSet {
  std::vector<BinaryTree> trees;
  bool truncated = false;
  mpz_class total = 0;  // exact number of parse trees
};

// Parse trees of f: one child per Add gate, Add gates bypassed, scalars
// dropped. Requires syntactic homogeneity and Mul fan-in exactly 2.
ParseTreeSet parse_trees(const Formula& f, std::size_t limit = 10000);
mpz_class count_parse_trees(const Formula& f);

struct UptResult {
  bool upt = false;
  std::optional<BinaryTree> tree;  // canonical parse tree when upt
};

// Bottom-up: a gate is consistent when its children are and, at Add gates,
// all children have the same canonical parse tree.
UptResult is_upt(const Formula& f);

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;  // d_1..d_t
  std::vector<std::uint32_t> suffixes;  // e_0..e_t, e_i = d - (d_1 + ... + d_i)
  std::uint32_t total() const { return suffixes.empty() ? 0 : suffixes.front(); }
};

DegreeSequence make_degree_sequence(std::vector<std::uint32_t> degrees);

// Deg-seq of a right-heavy tree: walk the rightmost path, stop at the last
// node with more than d/3 leaves, emit d minus its leaf count, recurse.
DegreeSequence deg_seq(const BinaryTree& t);
// Index of the node chosen at the top level: the number of right steps from
// the root to the last rightmost-path node with more than d/3 leaves.
std::size_t deg_seq_split_depth(const BinaryTree& t);

struct UptKTrace {
  std::uint32_t d = 0;
  std::uint32_t m = 0;
  std::vector<std::size_t> J;  // J[i-1] = min{j : e_j <= 3^i}, i = 1..3m
  std::vector<int> a;          // a_1..a_m
  std::vector<mpq_class> b0;
  std::vector<mpq_class> b1;
  mpq_class alpha = 0;
  std::uint64_t k = 0;
};

UptKTrace upt_k(const DegreeSequence& ds);

// Parse tree labelled with the formula gate each node came from (Mul gates
// for internal nodes, Input gates for leaves).
struct LabeledTree {
  std::size_t gate = 0;
  std::vector<LabeledTree> kids;  // empty or exactly two
  std::size_t leaves() const;
};

// The parse tree that takes the first child at every Add gate.
LabeledTree first_parse_tree(const Formula& f);
// Canonicalizes the labelled tree with the same swap rule as canonical_tree.
LabeledTree canonical_labeled(const LabeledTree& t);
BinaryTree unlabel(const LabeledTree& t);

}  // namespace shiftpd
