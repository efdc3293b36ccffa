#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace shiftpd {

struct ResidueValue {
  mpq_class value;
  std::vector<long> minimizers;  // (k_1, ..., k_t)
};

// residue_k(d_1..d_t) = 1/2 min over integers k_i of sum |k_i - (k/d) d_i|,
// d = sum d_i. Each k_i is the nearest integer to (k/d) d_i, rounding down on
// a tie. Requires d >= 1 and k < d.
ResidueValue residue(std::uint32_t k, const std::vector<std::uint32_t>& degrees);

// Same quantity by scanning every integer in [-window, window] for each
// coordinate; the objective is a sum of one-variable terms, so the per-
// coordinate minima add up to the tuple minimum. Ties keep the smallest k_i.
ResidueValue residue_bruteforce(std::uint32_t k, const std::vector<std::uint32_t>& degrees, std::uint32_t window);

// Variant with 0 <= k_i <= d_i and sum k_i = k (exact dynamic program).
ResidueValue residue_constrained(std::uint32_t k, const std::vector<std::uint32_t>& degrees);

}  // namespace shiftpd
