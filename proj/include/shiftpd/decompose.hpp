#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shiftpd/formula.hpp"
#include "shiftpd/polynomial.hpp"

namespace shiftpd {

struct Summand {
  std::vector<Polynomial> factors;
  std::vector<std::uint32_t> degrees;  // degrees[j] = deg(factors[j])
};

// f = sum_i prod_j Q_{i,j}.
struct ProductDecomposition {
  std::vector<Summand> summands;
  std::uint32_t nvars = 0;
  std::size_t source_size = 0;      // gates of the formula as given
  std::size_t normalized_size = 0;  // gates after the normalization passes
  std::uint32_t product_depth = 0;  // of the normalized formula

  std::size_t s() const { return summands.size(); }
  Polynomial recombine() const;
};

// Sum-of-products decomposition of a homogeneous formula of product depth
// >= 1 in which each summand has many low-degree factors. The formula is
// first normalized (flattened to alternating layers, unary gates bypassed,
// Add children of the wrong degree dropped). `d_threshold` defaults to the
// degree of f and may not exceed it.
ProductDecomposition low_depth_decompose(const Formula& f, std::optional<std::uint32_t> d_threshold = std::nullopt);

// Decomposition of a UPT formula via f = A_g C_g + f[g <- 0], where g is the
// gate at the deg_seq cut of the canonical parse tree. Every summand has the
// factor degrees of deg_seq. The formula is binarized first.
ProductDecomposition upt_log_product_decompose(const Formula& f);

struct LowDepthParams {
  std::uint32_t d = 0;
  std::uint32_t delta = 0;
  std::uint64_t tau = 0;  // floor(d^(2^(1-delta)))
  mpq_class alpha = 0;    // sum_{nu<delta} (-1)^nu / tau^(2^nu - 1)
  std::uint64_t k = 0;    // floor(alpha d / (1 + alpha))
  bool degenerate = false;  // tau == 1
};

LowDepthParams low_depth_k(std::uint32_t d, std::uint32_t delta);

struct ResidueFloorReport {
  bool holds = true;
  std::vector<mpq_class> residues;  // per summand
  std::optional<mpq_class> minimum;
};

// Every summand has residue_k(degrees) >= gamma.
ResidueFloorReport check_residue_floor(const ProductDecomposition& decomp, std::uint32_t k, const mpq_class& gamma);

struct LdsVerdict {
  std::size_t linear_factors = 0;
  bool many_linear = false;          // #linear >= d^(2^(1-Delta))
  std::optional<std::uint32_t> delta;  // smallest delta in [2..Delta] meeting the second condition
  bool holds() const { return many_linear || delta.has_value(); }
};

struct LdsReport {
  bool holds = true;
  std::vector<LdsVerdict> summands;
};

// Per summand: #{j : deg = 1} >= d^(2^(1-Delta)), or for some delta in
// [2..Delta], #{j : deg in [D/2, D]} >= D - 1 with D = d^(2^(1-delta)).
// All comparisons are done on integer powers.
LdsReport check_lds_conditions(const ProductDecomposition& decomp, std::uint32_t d, std::uint32_t delta);

// base^(2^e) >= d, computed with saturation.
bool pow2_power_at_least(std::uint64_t base, std::uint32_t e, std::uint64_t d);

}  // namespace shiftpd
