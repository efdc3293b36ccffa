#pragma once

#include <cstddef>
#include <cstdint>

#include "shiftpd/binary_tree.hpp"
#include "shiftpd/formula.hpp"
#include "shiftpd/random.hpp"

namespace shiftpd {

// Random formulas for the property suites. Each generator redraws until the
// result has at most `max_gates` gates (so the output depends only on the
// Rng state). Add edges carry nonzero integer scalars in [-3..3].

// Ordered binary tree with `leaves` leaves; each split point is uniform.
BinaryTree random_binary_tree(Rng& rng, std::size_t leaves);

// Syntactically homogeneous formula of degree d with Mul fan-in 2.
Formula random_homogeneous_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::size_t max_gates);

// Formula whose every parse tree is isomorphic to `shape` (Mul children may
// appear in either order). Degree = shape.leaves().
Formula random_upt_formula(Rng& rng, std::uint32_t n, const BinaryTree& shape, std::size_t max_gates);

// Sum of two UPT formulas of degree d with independently drawn shapes; UPT
// exactly when the shapes happen to be isomorphic.
Formula random_two_shape_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::size_t max_gates);

// Alternating sum-of-products formula of degree d and product depth <= delta;
// depth-0 pieces are variables or linear forms.
Formula random_low_depth_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::uint32_t delta,
                                 std::size_t max_gates);

}  // namespace shiftpd
