#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "shiftpd/polynomial.hpp"

namespace shiftpd {

// Integer pairs (k0, l0), k0 in [0..k], l0 in [0..d-k], with
// k0 + (k/(d-k)) l0 <= k - slack, tested exactly.
std::vector<std::pair<std::uint32_t, std::uint32_t>> feasible_shift_pairs(std::uint32_t k, std::uint32_t d,
                                                                           const mpq_class& slack);

// 2^t d^2 max M(n,k0) M(n,l0+l) over the region with slack = residue_k(degrees).
mpz_class product_sp_bound(std::uint32_t n, const std::vector<std::uint32_t>& degrees, std::uint32_t k,
                           std::uint32_t l);
// 2^t d^2 max M(n,k0) M(n0,l0) over the same region.
mpz_class product_app_bound(std::uint32_t n, const std::vector<std::uint32_t>& degrees, std::uint32_t k,
                            std::uint32_t n0);

struct ContainmentResult {
  bool holds = true;
  std::optional<Polynomial> witness;  // an order-k partial outside the span
  std::size_t generators = 0;
  std::size_t span_dimension = 0;
};

// Checks < d^k (Q_1...Q_t) > is inside the span of x^{l0} d^{k0}(prod_{i in S} Q_i)
// over all S and feasible (k0, l0). `extra_slack` is added to the residue
// (1 gives the strictened right-hand side).
ContainmentResult derivative_space_containment(const std::vector<Polynomial>& qs, std::uint32_t k,
                                               const mpq_class& extra_slack = 0);

}  // namespace shiftpd
