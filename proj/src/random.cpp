#include "shiftpd/random.hpp"

#include <limits>

#include "shiftpd/errors.hpp"

namespace shiftpd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw DomainError("Rng::uniform with lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(gen_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Polynomial random_homogeneous(Rng& rng, std::uint32_t n, std::uint32_t d, std::uint32_t terms, std::int64_t c) {
  Polynomial p(n);
  auto all = enumerate_monomials(n, d);
  for (std::uint32_t i = 0; i < terms; ++i) {
    std::int64_t v = 0;
    while (v == 0) v = rng.uniform(-c, c);
    p.add_term(rng.pick(all), Scalar(static_cast<long>(v)));
  }
  if (p.is_zero()) p.add_term(all.front(), Scalar(1));
  return p;
}

std::vector<std::uint32_t> random_composition(Rng& rng, std::uint32_t total, std::uint32_t parts) {
  if (parts == 0 || parts > total) throw DomainError("random_composition: need 1 <= parts <= total");
  std::vector<std::uint32_t> out(parts, 1);
  for (std::uint32_t i = parts; i < total; ++i) ++out[static_cast<std::size_t>(rng.uniform(0, parts - 1))];
  return out;
}

}  // namespace shiftpd
