#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "shiftpd/polynomial.hpp"

namespace shiftpd {

enum class GateOp { Input, Add, Mul };

struct Edge {
  std::size_t child = 0;
  Scalar coeff{1};
};

struct Gate {
  GateOp op = GateOp::Input;
  std::uint32_t var = 0;  // Input only, 1-based
  std::vector<Edge> children;
};

// Arithmetic formula over the rationals: a rooted tree of gates, every gate
// reachable from the root and with exactly one parent. Edges carry nonzero
// scalars.
class Formula {
 public:
  Formula(std::uint32_t nvars, std::vector<Gate> gates, std::size_t root);

  std::uint32_t nvars() const { return nvars_; }
  std::size_t root() const { return root_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(std::size_t id) const { return gates_.at(id); }
  // Number of gates (inputs included).
  std::size_t size() const { return gates_.size(); }
  // Children before parents, root last.
  std::vector<std::size_t> postorder() const;

 private:
  std::uint32_t nvars_;
  std::vector<Gate> gates_;
  std::size_t root_;
};

// Convenience construction; build() keeps only gates reachable from the root.
class FormulaBuilder {
 public:
  explicit FormulaBuilder(std::uint32_t nvars) : nvars_(nvars) {}
  std::size_t input(std::uint32_t var);
  std::size_t add(std::vector<std::pair<std::size_t, Scalar>> children);
  std::size_t add(const std::vector<std::size_t>& children);  // unit coefficients
  std::size_t mul(const std::vector<std::size_t>& children);
  std::size_t mul(std::vector<std::pair<std::size_t, Scalar>> children);
  Formula build(std::size_t root) const;

 private:
  std::uint32_t nvars_;
  std::vector<Gate> gates_;
};

Polynomial eval_formula(const Formula& f);
// Polynomial computed at every gate, indexed by gate id.
std::vector<Polynomial> eval_gates(const Formula& f);

// Every gate computes a homogeneous polynomial (evaluated exactly).
bool check_homogeneous(const Formula& f);
// Formal degree per gate: inputs 1, Mul the sum, Add the common degree of its
// children; nullopt where an Add gate mixes degrees (or below such a gate).
std::vector<std::optional<std::uint32_t>> formal_degrees(const Formula& f);
// All Add gates have children of one formal degree; implies check_homogeneous.
bool is_syntactically_homogeneous(const Formula& f);

// Max number of Mul gates on a root-to-leaf path.
std::uint32_t product_depth(const Formula& f);

struct RewriteOptions {
  bool binarize = false;       // Mul fan-in > 2 becomes a left-to-right chain
  bool flatten = false;        // Add under Add and Mul under Mul are merged
  bool collapse_unary = true;  // fan-in-1 gates are bypassed
  bool prune_degrees = false;  // drop Add children whose degree differs from the gate's polynomial
  std::optional<std::size_t> zero_gate;  // gate replaced by the constant 0
};

// Rewrites f without changing the polynomial (unless zero_gate is set).
// Scalars on Mul edges move up to the nearest Add edge; a scalar left at the
// root becomes a fan-in-1 Add. Zero subformulas are simplified away; nullopt
// when the result is the zero polynomial.
std::optional<Formula> rewrite_formula(const Formula& f, const RewriteOptions& opts);

// Mul gates get fan-in exactly 2, fan-in-1 gates are bypassed.
Formula binarize(const Formula& f);

// The subtree rooted at gate g as its own formula.
Formula subformula(const Formula& f, std::size_t g);

struct GateSplit {
  Polynomial A;  // coefficient of y in f with gate g replaced by y
  Polynomial B;  // the y-free part
  Formula Cg;
};
// f = A * eval(C_g) + B.
GateSplit split_at_gate(const Formula& f, std::size_t g);

}  // namespace shiftpd
