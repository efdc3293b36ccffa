#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftpd/polynomial.hpp"
#include "shiftpd/rank.hpp"

namespace shiftpd {

struct MeasureOptions {
  Field field = Field::rational();  // rank mode
  Budget budget{};
};

struct MeasureResult {
  std::string measure;  // "span", "sp", "pd", "app", "app-sampled", "skewp"
  std::uint32_t k = 0;
  std::uint32_t l = 0;
  std::uint32_t n0 = 0;
  std::size_t dimension = 0;
  std::size_t generators = 0;
  mpz_class ambient = 0;
  Field field{};
  bool inhomogeneous = false;  // computed anyway; the lemmas assume homogeneity
  bool lower_bound = false;    // APP values are certified lower bounds on the supremum
};

// dim span(polys).
MeasureResult span_dimension(const std::vector<Polynomial>& polys, const MeasureOptions& opts = {});

// The distinct nonzero order-k partial derivatives of p (derivatives by
// monomials not dividing any term vanish and are skipped).
std::vector<Polynomial> derivative_space(const Polynomial& p, std::uint32_t k);

// dim < x^l * d^k p >.
MeasureResult sp_measure(const Polynomial& p, std::uint32_t k, std::uint32_t l, const MeasureOptions& opts = {});
MeasureResult pd_measure(const Polynomial& p, std::uint32_t k, const MeasureOptions& opts = {});

// dim < pi_L(d^k p) > for the given L; a lower bound on APP_{k,n0}(p).
MeasureResult app_with_map(const Polynomial& p, std::uint32_t k, const LinearMap& L,
                           const MeasureOptions& opts = {});

// Random map with entries uniform in [-3..3] for trial `trial` under `seed`.
// Trial maps depend only on (seed, trial), so runs with more trials extend runs with fewer.
LinearMap sample_linear_map(std::uint32_t n, std::uint32_t n0, std::uint64_t seed, std::uint64_t trial);

// Max of app_with_map over `trials` sampled maps.
MeasureResult app_sampled(const Polynomial& p, std::uint32_t k, std::uint32_t n0, std::uint32_t trials,
                          std::uint64_t seed, const MeasureOptions& opts = {});

// dim < [d_m p]_{y=0} : m a degree-k monomial in the y variables >.
MeasureResult skewp_measure(const Polynomial& p, const std::vector<std::uint32_t>& yvars, std::uint32_t k,
                            const MeasureOptions& opts = {});

}  // namespace shiftpd
