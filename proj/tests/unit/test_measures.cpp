#include <algorithm>
#include <numeric>

#include "shiftpd/bounds.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/residue.hpp"
#include "test_util.hpp"

using namespace shiftpd;
using testutil::P;

namespace {

mpq_class frac(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

Polynomial product_of_variables(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 1u);
  return Polynomial::monomial(Monomial::from_variables(v), Scalar(1), n);
}

// Minimum of sum |k_i - (k/d) d_i| over k_i in a window wide enough to
// contain every optimum, halved.
mpq_class residue_oracle(std::uint32_t k, const std::vector<std::uint32_t>& ds) {
  const std::uint32_t d = std::accumulate(ds.begin(), ds.end(), 0u);
  mpq_class total = 0;
  for (auto di : ds) {
    const mpq_class target = frac(k * di, d);
    mpq_class best = -1;
    for (long ki = -2; ki <= static_cast<long>(di) + 2; ++ki) {
      const mpq_class dev = abs(mpq_class(ki) - target);
      if (best < 0 || dev < best) best = dev;
    }
    total += best;
  }
  return total / 2;
}

// Product bound recomputed from its definition.
mpz_class sp_bound_oracle(std::uint32_t n, const std::vector<std::uint32_t>& ds, std::uint32_t k, std::uint32_t l) {
  const std::uint32_t d = std::accumulate(ds.begin(), ds.end(), 0u);
  const mpq_class slack = residue_oracle(k, ds);
  mpz_class best = 0;
  for (std::uint32_t k0 = 0; k0 <= k; ++k0)
    for (std::uint32_t l0 = 0; l0 <= d - k; ++l0)
      if (mpq_class(k0) + frac(k, d - k) * l0 <= mpq_class(k) - slack)
        best = std::max(best, mpz_class(count_monomials(n, k0) * count_monomials(n, l0 + l)));
  return (mpz_class(1) << ds.size()) * d * d * best;
}

}  // namespace

TEST_CASE("span dimension") {
  CHECK(span_dimension({P("x1", 2), P("x2", 2), P("x1 + x2", 2)}).dimension == 2);
  CHECK(span_dimension({}).dimension == 0);
  CHECK(span_dimension({Polynomial(2)}).dimension == 0);
}

TEST_CASE("shifted partials examples") {
  CHECK(sp_measure(P("x1*x2*x3", 3), 1, 0).dimension == 3);
  CHECK(sp_measure(P("x1*x2 - x3^2", 3), 0, 0).dimension == 1);
  CHECK(sp_measure(P("x1*x2", 2), 1, 1).dimension == 3);
  CHECK(sp_measure(Polynomial(3), 1, 1).dimension == 0);
  const auto r = sp_measure(P("x1^2*x2 + x3^3", 3), 1, 2);
  CHECK(r.ambient == count_monomials(3, 3 - 1 + 2));
  CHECK(r.dimension <= std::min<std::size_t>(r.generators, r.ambient.get_ui()));
  CHECK_FALSE(r.inhomogeneous);
  CHECK(sp_measure(P("x1 + x2^2", 2), 1, 0).inhomogeneous);
}

TEST_CASE("partial derivative dimension") {
  CHECK(pd_measure(nw_polynomial(3, 4, 1).poly, 1).dimension == 12);
  for (std::uint32_t n = 1; n <= 7; ++n)
    for (std::uint32_t k = 0; k <= n; ++k)
      CHECK(pd_measure(product_of_variables(n), k).dimension == testutil::pascal(n, k));
}

TEST_CASE("projected partials on the Vandermonde example") {
  const auto mv = monomial_and_vandermonde(5, 2, 3);
  CHECK(app_with_map(mv.poly, 2, mv.map).dimension == 10);
  const auto zero = LinearMap::from_matrix(3, std::vector<std::vector<Scalar>>(5, std::vector<Scalar>(3, Scalar(0))));
  CHECK(app_with_map(mv.poly, 2, zero).dimension <= 1);
  const auto sampled = app_sampled(mv.poly, 2, 3, 8, 42);
  CHECK(sampled.dimension == 10);
  CHECK(sampled.lower_bound);
  CHECK_THROWS_AS(monomial_and_vandermonde(5, 2, 4), DomainError);
}

TEST_CASE("sampled maps extend across trial counts") {
  const auto a = sample_linear_map(4, 2, 99, 0);
  const auto b = sample_linear_map(4, 2, 99, 0);
  REQUIRE(a.images.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(a.images[i] == b.images[i]);
  const auto p = P("x1*x2*x3 + x2*x4^2", 4);
  CHECK(app_sampled(p, 1, 2, 2, 99).dimension <= app_sampled(p, 1, 2, 5, 99).dimension);
}

TEST_CASE("skewed partials") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    const auto p = product_of_variables(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::uint32_t> y;
      for (std::uint32_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) y.push_back(i + 1);
      for (std::uint32_t k = 0; k <= y.size(); ++k) CHECK(skewp_measure(p, y, k).dimension <= 1);
    }
  }
  CHECK(skewp_measure(P("x1*x2 + x3^2", 3), {1}, 0).dimension == 1);
}

TEST_CASE("residue examples") {
  CHECK(residue(2, {2, 2}).value == 0);
  CHECK(residue(1, {1, 1}).value == mpq_class(1, 2));
  CHECK(residue(1, {2, 3}).value == mpq_class(2, 5));
  for (std::uint32_t t = 2; t <= 8; t += 2) {
    const std::vector<std::uint32_t> ones(t, 1);
    CHECK(residue(t / 2, ones).value == frac(t, 4));
  }
  const auto r = residue(1, {2, 3});
  REQUIRE(r.minimizers.size() == 2);
  CHECK(r.minimizers == std::vector<long>{0, 1});
  CHECK_THROWS_AS(residue(4, {2, 2}), DomainError);
}

TEST_CASE("property: residue matches an independent minimization") {
  Rng rng(derive_seed(11, 1, 0));
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = static_cast<std::size_t>(rng.uniform(1, 5));
    std::vector<std::uint32_t> ds;
    for (std::size_t i = 0; i < t; ++i) ds.push_back(static_cast<std::uint32_t>(rng.uniform(1, 9)));
    const std::uint32_t d = std::accumulate(ds.begin(), ds.end(), 0u);
    const auto k = static_cast<std::uint32_t>(rng.uniform(0, d - 1));
    const auto r = residue(k, ds);
    CHECK(r.value == residue_oracle(k, ds));
    CHECK(r.value >= 0);
    CHECK(2 * r.value <= k);
    // The reported minimizers attain the value.
    mpq_class dev = 0;
    for (std::size_t i = 0; i < t; ++i) dev += abs(mpq_class(r.minimizers[i]) - frac(k * ds[i], d));
    CHECK(dev == 2 * r.value);
    // The constrained variant can only be larger.
    CHECK(residue_constrained(k, ds).value >= r.value);
  }
}

TEST_CASE("product bound examples") {
  // One factor: residue 0, so (k, 0) is feasible.
  for (std::uint32_t d = 2; d <= 6; ++d)
    for (std::uint32_t k = 1; k < d; ++k)
      for (std::uint32_t l = 0; l <= 2; ++l) {
        const auto b = product_sp_bound(3, {d}, k, l);
        CHECK(b >= 2 * d * d * count_monomials(3, k) * count_monomials(3, l));
      }
  // k = 0 leaves l0 free up to d, so the largest shift M(n, l + d) wins;
  // SP_{0,l} = M(n, l) sits far below it.
  CHECK(product_sp_bound(3, {2, 3}, 0, 2) == 4 * 25 * count_monomials(3, 7));
  CHECK(sp_measure(P("x1^2*x2^3 + x3^5", 3), 0, 2).dimension == count_monomials(3, 2));
  // n0 = 1 makes every shift factor 1. residue_1(2,2) = 1/2 forces k0 = 0.
  CHECK(product_app_bound(3, {2, 2}, 1, 1) == 4 * 16);
  CHECK(product_app_bound(3, {4}, 2, 1) == 2 * 16 * count_monomials(3, 2));
}

TEST_CASE("property: product bound matches its definition") {
  Rng rng(derive_seed(11, 2, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = static_cast<std::uint32_t>(rng.uniform(1, 3));
    const auto d = static_cast<std::uint32_t>(rng.uniform(t, 7));
    const auto ds = random_composition(rng, d, t);
    if (d < 2) continue;
    const auto k = static_cast<std::uint32_t>(rng.uniform(0, d - 1));
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
    const auto l = static_cast<std::uint32_t>(rng.uniform(0, 3));
    CHECK(product_sp_bound(n, ds, k, l) == sp_bound_oracle(n, ds, k, l));
  }
}

TEST_CASE("containment and its strictened form") {
  const std::vector<Polynomial> qs = {P("x1 + x2", 2), P("x1*x2 - x2^2", 2)};
  for (std::uint32_t k = 0; k < 3; ++k) CHECK(derivative_space_containment(qs, k).holds);
  // With one unit of extra slack only (k0, l0) = (0, 0) survives for x1*x2 at k = 1.
  const auto strict = derivative_space_containment({P("x1*x2", 2)}, 1, 1);
  CHECK_FALSE(strict.holds);
  REQUIRE(strict.witness.has_value());
  CHECK(is_homogeneous(*strict.witness).degree == 1u);
}

TEST_CASE("property: measure inequalities on random polynomials") {
  Rng rng(derive_seed(11, 3, 0));
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
    const auto d = static_cast<std::uint32_t>(rng.uniform(2, 5));
    const auto p = random_homogeneous(rng, n, d, static_cast<std::uint32_t>(rng.uniform(1, 6)));
    const auto k = static_cast<std::uint32_t>(rng.uniform(0, d - 1));
    const auto l = static_cast<std::uint32_t>(rng.uniform(0, 2));

    // Ambient bound.
    const auto sp = sp_measure(p, k, l).dimension;
    CHECK(sp <= count_monomials(n, k) * count_monomials(n, l));
    CHECK(sp <= count_monomials(n, d - k + l));

    // Projection cannot increase the derivative dimension.
    const auto n0 = static_cast<std::uint32_t>(rng.uniform(1, 3));
    const auto L = sample_linear_map(n, n0, derive_seed(11, 4, static_cast<std::uint64_t>(trial)), 0);
    CHECK(app_with_map(p, k, L).dimension <= pd_measure(p, k).dimension);

    // Relabelling variables does not change SP.
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::uint32_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, i - 1))]);
    std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::uint32_t i = 0; i < n; ++i) rows[i][perm[i]] = Scalar(1);
    CHECK(sp_measure(apply_linear_map(p, LinearMap::from_matrix(n, rows)), k, l).dimension == sp);
  }
}
