#pragma once

#include <cstdint>
#include <optional>

namespace shiftpd {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Largest prime in [lo, hi], or nullopt when the interval holds none.
std::optional<std::uint64_t> largest_prime_in(std::uint64_t lo, std::uint64_t hi);

}  // namespace shiftpd
