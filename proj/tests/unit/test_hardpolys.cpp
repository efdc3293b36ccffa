#include <array>
#include <cmath>
#include <set>

#include "shiftpd/errors.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "test_util.hpp"

using namespace shiftpd;
using testutil::P;

namespace {

// IMM by multiplying symbolic matrices entry by entry.
Polynomial imm_oracle(std::uint32_t n, std::uint32_t d) {
  const std::uint32_t nv = n * n * d;
  std::vector<std::vector<Polynomial>> acc(n, std::vector<Polynomial>(n, Polynomial(nv)));
  for (std::uint32_t a = 1; a <= n; ++a)
    for (std::uint32_t b = 1; b <= n; ++b) acc[a - 1][b - 1] = Polynomial::variable(imm_variable(n, 1, a, b), nv);
  for (std::uint32_t m = 2; m <= d; ++m) {
    std::vector<std::vector<Polynomial>> next(n, std::vector<Polynomial>(n, Polynomial(nv)));
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          next[a][b] += acc[a][c] * Polynomial::variable(imm_variable(n, m, c + 1, b + 1), nv);
    acc = std::move(next);
  }
  return acc[0][0];
}

// NW by enumerating the coefficient vectors of h.
Polynomial nw_oracle(std::uint32_t q, std::uint32_t d, std::uint32_t k) {
  Polynomial out(q * d);
  std::vector<std::uint32_t> coeffs(k, 0);
  while (true) {
    std::vector<std::uint32_t> vars;
    for (std::uint32_t i = 1; i <= d; ++i) {
      std::uint64_t v = 0, pw = 1;
      for (std::uint32_t j = 0; j < k; ++j, pw = pw * i % q) v = (v + coeffs[j] * pw) % q;
      vars.push_back(nw_variable(q, i, static_cast<std::uint32_t>(v)));
    }
    out.add_term(Monomial::from_variables(vars), Scalar(1));
    std::uint32_t j = 0;
    while (j < k && ++coeffs[j] == q) coeffs[j++] = 0;
    if (j == k) break;
  }
  return out;
}

// y -> 0 on the positive sets, the negative-set variables onto z_1..z_n0 in order.
LinearMap kill_positive(const WordPolynomial& wp) {
  std::vector<std::vector<Scalar>> rows(wp.n, std::vector<Scalar>(wp.n0, Scalar(0)));
  std::uint32_t z = 0;
  for (std::size_t i = 0; i < wp.set_size.size(); ++i)
    if (wp.negative[i])
      for (std::uint32_t b = 0; b < wp.set_size[i]; ++b) rows[wp.set_offset[i] + b][z++] = Scalar(1);
  return LinearMap::from_matrix(wp.n0, rows);
}

}  // namespace

TEST_CASE("unbiased word construction") {
  const auto params = word_build_params(2, 4, 2);
  CHECK(params.h_prime == 2);
  CHECK(params.k1 == 0);
  CHECK(params.k2 == 2);
  const auto w = construct_unbiased_word(2, 4, 2);
  CHECK(w.weights == std::vector<int>{-2, 2, -2, 2});
  CHECK(w.variable_count() == 16);
  CHECK(is_h_unbiased(w.weights, 2));
  CHECK_FALSE(is_h_unbiased({2, 2, -4}, 3));
  CHECK_THROWS_AS(construct_unbiased_word(2, 4, 3), DomainError);
}

TEST_CASE("property: built words are unbiased and balanced") {
  for (int h = 1; h <= 4; ++h)
    for (std::uint32_t d = 2; d <= 10; ++d)
      for (std::uint32_t k = 1; 2 * k <= d; ++k) {
        const auto w = construct_unbiased_word(h, d, k);
        CHECK(w.degree() == d);
        CHECK(is_h_unbiased(w.weights, h));
        int sum = 0, neg = 0, pos_count = 0;
        for (int x : w.weights) {
          sum += x;
          if (x < 0) neg -= x;
          if (x > 0) pos_count++;
          CHECK(std::abs(x) <= h);
        }
        CHECK(sum == 0);
        CHECK(neg == h * static_cast<int>(k));
        CHECK(pos_count == static_cast<int>(k));
      }
}

TEST_CASE("word polynomial on a two-letter word") {
  Word w;
  w.weights = {1, -1};
  w.h = 1;
  const auto wp = word_polynomial(w);
  CHECK(wp.n == 4);
  CHECK(wp.n0 == 2);
  CHECK(wp.poly == P("x1*x3 + x2*x4", 4));
  CHECK(negative_monomials(wp).size() == 2);
  CHECK(positive_variables(wp) == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("word polynomial on the (2,4,2) word") {
  const auto wp = word_polynomial(construct_unbiased_word(2, 4, 2));
  CHECK(wp.n == 16);
  CHECK(wp.n0 == 8);
  CHECK(is_homogeneous(wp.poly).degree == 4u);
  CHECK(negative_monomials(wp).size() == 16);
  CHECK(app_with_map(wp.poly, 2, kill_positive(wp)).dimension == 16);
}

TEST_CASE("property: shifted negative monomials sit inside the shifted partials") {
  // Words with at most 24 variables; (1,4,1) has zero letters, which count as positive sets.
  const std::vector<std::array<int, 3>> cases = {{1, 2, 1}, {1, 4, 2}, {1, 6, 3}, {2, 4, 2},
                                                 {2, 6, 2}, {2, 5, 2}, {2, 2, 1}, {1, 4, 1}};
  for (const auto& [h, d, k] : cases) {
    const auto wp =
        word_polynomial(construct_unbiased_word(h, static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(k)));
    REQUIRE(wp.n <= 24);
    const auto minus = negative_monomials(wp);
    CHECK(minus.size() == (std::size_t{1} << (h * k)));
    std::set<std::string> minus_text, seen;
    for (const auto& m : minus) minus_text.insert(format_monomial(m));

    // Every set-multilinear monomial over the non-negative sets, as variable lists.
    std::vector<std::vector<std::uint32_t>> plus = {{}};
    for (std::size_t i = 0; i < wp.set_size.size(); ++i) {
      if (wp.negative[i]) continue;
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& prefix : plus)
        for (std::uint32_t b = 0; b < wp.set_size[i]; ++b) {
          next.push_back(prefix);
          next.back().push_back(wp.set_offset[i] + b + 1);
        }
      plus = std::move(next);
    }
    CHECK(plus.size() == minus.size());
    std::vector<Polynomial> partials;
    for (const auto& vars : plus) {
      const auto part = partial_derivative(wp.poly, DerivativeMultiset::of(vars));
      REQUIRE(part.term_count() == 1);
      const auto& [mono, coeff] = *part.terms().begin();
      CHECK(coeff.is_one());
      seen.insert(format_monomial(mono));
      partials.push_back(part);
    }
    CHECK(seen == minus_text);

    const auto ys = positive_variables(wp);
    const std::uint32_t l = 1;
    std::vector<Polynomial> gens;
    for (const auto& p : partials)
      for (auto y : ys) gens.push_back(p.times_monomial(Monomial::variable(y)));
    CHECK(span_rank(gens, Field::prime()) >= count_monomials(wp.n - wp.n0, l) * minus.size());
  }
}

TEST_CASE("design polynomial") {
  const auto nw = nw_polynomial(3, 3, 1);
  CHECK(nw.poly == P("x1*x4*x7 + x2*x5*x8 + x3*x6*x9", 9));
  CHECK(nw.distinct_points);
  CHECK(nw_polynomial(3, 3, 2).poly.term_count() == 9);
  CHECK_FALSE(nw_polynomial(3, 4, 1).distinct_points);
  CHECK(nw_variable(3, 2, 1) == 5);
  CHECK_THROWS_AS(nw_polynomial(4, 3, 1), DomainError);
  CHECK_THROWS_AS(nw_polynomial(3, 3, 0), DomainError);
  for (std::uint32_t q : {2u, 3u, 5u})
    for (std::uint32_t d = 1; d <= 4; ++d)
      for (std::uint32_t k = 1; k <= std::min(d, 3u); ++k) CHECK(nw_polynomial(q, d, k).poly == nw_oracle(q, d, k));
}

TEST_CASE("design polynomial derivative dimension where the points are distinct") {
  for (std::uint32_t q : {3u, 5u})
    for (std::uint32_t d = 3; d <= q; ++d)
      for (std::uint32_t k = 1; d >= 2 * k + 1; ++k)
        CHECK(pd_measure(nw_polynomial(q, d, k).poly, k).dimension ==
              testutil::pascal(d, k) * static_cast<std::uint64_t>(std::pow(q, k)));
}

TEST_CASE("iterated matrix multiplication") {
  CHECK(imm_polynomial(1, 3) == P("x1*x2*x3", 3));
  CHECK(imm_polynomial(2, 2) == P("x1*x5 + x2*x7", 8));
  for (std::uint32_t n = 1; n <= 3; ++n)
    for (std::uint32_t d = 1; d <= 3; ++d) {
      const auto p = imm_polynomial(n, d);
      CHECK(p == imm_oracle(n, d));
      CHECK(p.term_count() == static_cast<std::size_t>(std::pow(n, d - 1)));
    }
}

TEST_CASE("p-sigma") {
  const auto ps = p_sigma(20, 4, 2);
  CHECK(ps.k == 1);
  CHECK(ps.n0 == 16);
  CHECK(ps.n1 == 4);
  CHECK(is_homogeneous(ps.poly).degree == 4u);
  CHECK(app_with_map(ps.poly, ps.k, ps.kill_y).dimension == count_monomials(ps.n1, ps.k));
  // n0 is the largest N with N^(d-k) k^k <= (2(d-k))^(d-k) n^k.
  for (std::uint32_t n = 10; n <= 60; n += 5)
    for (std::uint32_t d = 3; d <= 7; ++d)
      for (std::uint32_t k = 1; k < d; ++k) {
        const auto n0 = p_sigma_n0(n, d, k);
        const auto ok = [&](mpz_class N) {
          mpz_class lhs, rhs, t;
          mpz_pow_ui(lhs.get_mpz_t(), N.get_mpz_t(), d - k);
          mpz_ui_pow_ui(t.get_mpz_t(), k, k);
          lhs *= t;
          mpz_ui_pow_ui(rhs.get_mpz_t(), 2 * (d - k), d - k);
          mpz_ui_pow_ui(t.get_mpz_t(), n, k);
          rhs *= t;
          return lhs <= rhs;
        };
        CHECK(ok(n0));
        CHECK_FALSE(ok(n0 + 1));
      }
}

TEST_CASE("vandermonde forms are generic") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto mv = monomial_and_vandermonde(7, k, k + 1);
    // Every k+1 of the forms are independent.
    for (unsigned mask = 0; mask < (1u << 7); ++mask) {
      if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != k + 1) continue;
      std::vector<Polynomial> forms;
      for (std::uint32_t i = 0; i < 7; ++i)
        if ((mask >> i) & 1) forms.push_back(mv.map.images[i]);
      CHECK(span_rank(forms) == k + 1);
    }
    CHECK(app_with_map(mv.poly, k, mv.map).dimension == testutil::pascal(7, k));
  }
}

TEST_CASE("power of a quadratic") {
  CHECK(power_of_quadratic(2, 1) == P("x1^2 + x2^2", 2));
  CHECK(pd_measure(power_of_quadratic(3, 2), 1).dimension == 3);
  CHECK(power_of_quadratic(3, 2).term_count() == count_monomials(3, 2));
}

TEST_CASE("design counting identities") {
  auto r = nw_count_identities(2, 3, 1, 1, true);
  CHECK(r.sum_t_h == 12);
  CHECK(r.direct_sum_t_h == r.sum_t_h);
  r = nw_count_identities(2, 3, 1, 2, true);
  CHECK(r.sum_t_h == 42);
  for (std::uint32_t q : {2u, 3u})
    for (std::uint32_t d = 1; d <= 4; ++d)
      for (std::uint32_t k = 1; k <= std::min(d, 2u); ++k)
        for (std::uint32_t l = 0; l <= 2; ++l) {
          const auto c = nw_count_identities(q, d, k, l, true);
          CHECK(c.direct_sum_t_h == c.sum_t_h);
          CHECK(c.ie_lower <= *c.direct_t);
          CHECK(*c.direct_t <= c.sum_t_h);
          CHECK(c.t_h == testutil::pascal(q * d + l - 1, q * d - 1));
        }
}

TEST_CASE("generator budgets") {
  Budget tiny;
  tiny.max_terms = 10;
  CHECK_THROWS_AS(imm_polynomial(3, 4, tiny), BudgetExceeded);
  CHECK_THROWS_AS(nw_polynomial(5, 5, 3, tiny), BudgetExceeded);
}
