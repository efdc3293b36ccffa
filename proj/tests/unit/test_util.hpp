#pragma once

#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "shiftpd/polynomial.hpp"
#include "shiftpd/random.hpp"

namespace testutil {

inline shiftpd::Polynomial P(const std::string& text, std::uint32_t nvars) {
  return shiftpd::parse_polynomial(text, nvars);
}

// Nonzero polynomial of mixed degree: a sum of random homogeneous parts.
inline shiftpd::Polynomial random_poly(shiftpd::Rng& rng, std::uint32_t n, std::uint32_t max_deg) {
  shiftpd::Polynomial p(n);
  const auto parts = rng.uniform(1, 2);
  for (std::int64_t i = 0; i < parts; ++i) {
    p += shiftpd::random_homogeneous(rng, n, static_cast<std::uint32_t>(rng.uniform(0, max_deg)),
                                     static_cast<std::uint32_t>(rng.uniform(1, 4)));
  }
  return p;
}

inline std::vector<std::uint32_t> random_vars(shiftpd::Rng& rng, std::uint32_t n, std::uint32_t count) {
  std::vector<std::uint32_t> v;
  for (std::uint32_t i = 0; i < count; ++i) v.push_back(static_cast<std::uint32_t>(rng.uniform(1, n)));
  return v;
}

// Independent binomial coefficient by Pascal's rule.
inline std::uint64_t pascal(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

}  // namespace testutil
