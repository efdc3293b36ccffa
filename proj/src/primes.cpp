#include "shiftpd/primes.hpp"

#include "shiftpd/errors.hpp"
#include "shiftpd/scalar.hpp"

namespace shiftpd {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a known deterministic witness set below 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t x = pow_mod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::uint64_t> largest_prime_in(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw DomainError("largest_prime_in: lo > hi");
  for (std::uint64_t n = hi;; --n) {
    if (is_prime_u64(n)) return n;
    if (n == lo) break;
  }
  return std::nullopt;
}

}  // namespace shiftpd
