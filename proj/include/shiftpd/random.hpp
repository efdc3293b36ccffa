#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "shiftpd/polynomial.hpp"

namespace shiftpd {

// Seed protocol: every random case derives its own 64-bit seed from the run
// seed and a (stream, index) pair through splitmix64, so any single case can
// be reproduced from the triple printed in a failure report.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform integer in [lo, hi], by rejection (library-independent output).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

// Random homogeneous polynomial of degree d in n variables with up to
// `terms` terms and nonzero integer coefficients in [-c..c].
Polynomial random_homogeneous(Rng& rng, std::uint32_t n, std::uint32_t d, std::uint32_t terms, std::int64_t c = 3);

// Random composition of `total` into `parts` positive parts.
std::vector<std::uint32_t> random_composition(Rng& rng, std::uint32_t total, std::uint32_t parts);

}  // namespace shiftpd
