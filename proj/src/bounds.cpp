#include "shiftpd/bounds.hpp"

#include <string>

#include "shiftpd/errors.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/rank.hpp"
#include "shiftpd/residue.hpp"

namespace shiftpd {

std::vector<std::pair<std::uint32_t, std::uint32_t>> feasible_shift_pairs(std::uint32_t k, std::uint32_t d,
                                                                           const mpq_class& slack) {
  if (k >= d) throw DomainError("feasible region needs k < d");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const mpq_class ratio(k, d - k);
  const mpq_class cap = mpq_class(k) - slack;
  for (std::uint32_t k0 = 0; k0 <= k; ++k0) {
    for (std::uint32_t l0 = 0; l0 <= d - k; ++l0) {
      if (mpq_class(k0) + ratio * l0 <= cap) out.emplace_back(k0, l0);
    }
  }
  return out;
}

namespace {

template <class ShiftCount>
mpz_class product_bound(std::uint32_t n, const std::vector<std::uint32_t>& degrees, std::uint32_t k,
                        ShiftCount shift) {
  std::uint64_t d = 0;
  for (auto di : degrees) d += di;
  if (k >= d) throw DomainError("product bound needs k < d (k = " + std::to_string(k) + ", d = " + std::to_string(d) + ")");
  const mpq_class res = residue(k, degrees).value;
  mpz_class best = 0;
  for (const auto& [k0, l0] : feasible_shift_pairs(k, static_cast<std::uint32_t>(d), res)) {
    mpz_class v = count_monomials(n, k0) * shift(l0);
    if (v > best) best = v;
  }
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), degrees.size());
  return scale * mpz_class(static_cast<unsigned long>(d)) * mpz_class(static_cast<unsigned long>(d)) * best;
}

}  // namespace

mpz_class product_sp_bound(std::uint32_t n, const std::vector<std::uint32_t>& degrees, std::uint32_t k,
                           std::uint32_t l) {
  return product_bound(n, degrees, k, [&](std::uint32_t l0) { return count_monomials(n, l0 + l); });
}

mpz_class product_app_bound(std::uint32_t n, const std::vector<std::uint32_t>& degrees, std::uint32_t k,
                            std::uint32_t n0) {
  if (n0 == 0) throw DomainError("product_app_bound needs n0 >= 1");
  return product_bound(n, degrees, k, [&](std::uint32_t l0) { return count_monomials(n0, l0); });
}

ContainmentResult derivative_space_containment(const std::vector<Polynomial>& qs, std::uint32_t k,
                                               const mpq_class& extra_slack) {
  if (qs.empty()) throw DomainError("containment needs at least one factor");
  const std::uint32_t n = qs.front().nvars();
  std::vector<std::uint32_t> degrees;
  for (const auto& q : qs) {
    auto h = is_homogeneous(q);
    if (!h.homogeneous || !h.degree || *h.degree == 0)
      throw PreconditionError("containment factors must be non-constant homogeneous polynomials");
    degrees.push_back(*h.degree);
  }
  std::uint32_t d = 0;
  for (auto di : degrees) d += di;
  const mpq_class slack = residue(k, degrees).value + extra_slack;
  const auto pairs = feasible_shift_pairs(k, d, slack);

  ContainmentResult out;
  EchelonSpan span;
  const std::size_t t = qs.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << t); ++mask) {
    Polynomial prod = Polynomial::constant(Scalar(1), n);
    for (std::size_t i = 0; i < t; ++i) {
      if (mask >> i & 1) prod = prod * qs[i];
    }
    // Cache the derivative basis per k0 for this subset.
    std::vector<std::optional<std::vector<Polynomial>>> by_k0(k + 1);
    for (const auto& [k0, l0] : pairs) {
      if (!by_k0[k0]) by_k0[k0] = span_basis(derivative_space(prod, k0));
      for (const auto& m : enumerate_monomials(n, l0)) {
        for (const auto& b : *by_k0[k0]) {
          span.add(b.times_monomial(m));
        }
      }
    }
  }
  out.generators = span.generators();
  out.span_dimension = span.rank();

  Polynomial full = Polynomial::constant(Scalar(1), n);
  for (const auto& q : qs) full = full * q;
  for (const auto& a : enumerate_monomials(n, k)) {
    Polynomial der = partial_derivative(full, DerivativeMultiset(a));
    if (!span.contains(der)) {
      out.holds = false;
      out.witness = der;
      return out;
    }
  }
  return out;
}

}  // namespace shiftpd
