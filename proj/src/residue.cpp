#include "shiftpd/residue.hpp"

#include <optional>
#include <string>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {

std::uint64_t total_degree(std::uint32_t k, const std::vector<std::uint32_t>& degrees) {
  std::uint64_t d = 0;
  for (auto di : degrees) {
    if (di == 0) throw DomainError("residue: degrees must be positive");
    d += di;
  }
  if (d == 0) throw DomainError("residue: empty degree list");
  if (k >= d) throw DomainError("residue: need k < d (k = " + std::to_string(k) + ", d = " + std::to_string(d) + ")");
  return d;
}

mpq_class abs_q(const mpq_class& q) { return sgn(q) < 0 ? mpq_class(-q) : q; }

}  // namespace

ResidueValue residue(std::uint32_t k, const std::vector<std::uint32_t>& degrees) {
  const std::uint64_t d = total_degree(k, degrees);
  ResidueValue r;
  r.value = 0;
  for (auto di : degrees) {
    mpq_class target(static_cast<unsigned long>(k) * di, static_cast<unsigned long>(d));
    target.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
    mpq_class frac = target - fl;
    mpz_class ki = frac <= mpq_class(1, 2) ? fl : mpz_class(fl + 1);
    r.minimizers.push_back(ki.get_si());
    r.value += abs_q(target - ki);
  }
  r.value /= 2;
  return r;
}

ResidueValue residue_bruteforce(std::uint32_t k, const std::vector<std::uint32_t>& degrees, std::uint32_t window) {
  const std::uint64_t d = total_degree(k, degrees);
  if (window < d) throw DomainError("residue_bruteforce: window must be at least d");
  ResidueValue r;
  r.value = 0;
  for (auto di : degrees) {
    mpq_class target(static_cast<unsigned long>(k) * di, static_cast<unsigned long>(d));
    target.canonicalize();
    std::optional<mpq_class> best;
    long arg = 0;
    for (long c = -static_cast<long>(window); c <= static_cast<long>(window); ++c) {
      mpq_class v = abs_q(target - c);
      if (!best || v < *best) {
        best = v;
        arg = c;
      }
    }
    r.minimizers.push_back(arg);
    r.value += *best;
  }
  r.value /= 2;
  return r;
}

ResidueValue residue_constrained(std::uint32_t k, const std::vector<std::uint32_t>& degrees) {
  const std::uint64_t d = total_degree(k, degrees);
  const std::size_t t = degrees.size();
  // best[i][s]: minimum over k_1..k_i summing to s; choice[i][s] records k_i.
  std::vector<std::vector<std::optional<mpq_class>>> best(t + 1, std::vector<std::optional<mpq_class>>(k + 1));
  std::vector<std::vector<long>> choice(t + 1, std::vector<long>(k + 1, 0));
  best[0][0] = mpq_class(0);
  for (std::size_t i = 0; i < t; ++i) {
    mpq_class target(static_cast<unsigned long>(k) * degrees[i], static_cast<unsigned long>(d));
    target.canonicalize();
    for (std::uint32_t s = 0; s <= k; ++s) {
      if (!best[i][s]) continue;
      for (std::uint32_t ki = 0; ki <= degrees[i] && s + ki <= k; ++ki) {
        mpq_class v = *best[i][s] + abs_q(target - ki);
        auto& slot = best[i + 1][s + ki];
        if (!slot || v < *slot) {
          slot = v;
          choice[i + 1][s + ki] = ki;
        }
      }
    }
  }
  ResidueValue r;
  r.value = *best[t][k] / 2;
  r.minimizers.assign(t, 0);
  std::uint32_t s = k;
  for (std::size_t i = t; i > 0; --i) {
    r.minimizers[i - 1] = choice[i][s];
    s -= static_cast<std::uint32_t>(choice[i][s]);
  }
  return r;
}

}  // namespace shiftpd
