#include <algorithm>
#include <map>

#include "shiftpd/errors.hpp"
#include "shiftpd/primes.hpp"
#include "shiftpd/rank.hpp"
#include "test_util.hpp"

using namespace shiftpd;
using testutil::P;

TEST_CASE("addition merges like terms and drops cancellations") {
  CHECK(P("x1 + x2", 2) + P("-x2", 2) == P("x1", 2));
  CHECK(P("2*x1^2", 1) + P("3*x1^2", 1) == P("5*x1^2", 1));
  const auto p = P("3/2*x1^2*x3 - x2", 3);
  CHECK(p + Polynomial(3) == p);
  CHECK((p - p).is_zero());
}

TEST_CASE("multiplication") {
  CHECK(P("x1 + x2", 2) * P("x1 - x2", 2) == P("x1^2 - x2^2", 2));
  const auto p = P("x1*x2 - 7", 2);
  CHECK(p * Polynomial::constant(Scalar(1), 2) == p);
  CHECK(P("x1 + 1", 1).pow(3) == P("x1^3 + 3*x1^2 + 3*x1 + 1", 1));
}

TEST_CASE("operands must share nvars and field") {
  CHECK_THROWS_AS(P("x1", 1) + P("x1", 2), DimensionError);
  CHECK_THROWS_AS(P("x1", 1) * P("x1", 1).to_field(Field::prime(7)), DimensionError);
}

TEST_CASE("partial derivatives use falling factorials") {
  CHECK(partial_derivative(P("x1^2*x2", 2), DerivativeMultiset::of({1})) == P("2*x1*x2", 2));
  CHECK(partial_derivative(P("x1*x2*x3", 3), DerivativeMultiset::of({1, 2})) == P("x3", 3));
  CHECK(partial_derivative(P("x1^3", 1), DerivativeMultiset::of({1, 1})) == P("6*x1", 1));
  CHECK(partial_derivative(P("x1^2", 2), DerivativeMultiset::of({2})).is_zero());
}

TEST_CASE("derivatives over a small prime need p above the degree") {
  const auto p = P("x1^7", 1).to_field(Field::prime(5));
  CHECK_THROWS_AS(partial_derivative(p, DerivativeMultiset::of({1})), DomainError);
}

// Repeated single-variable differentiation, written against the term map.
static Polynomial derive_once(const Polynomial& p, std::uint32_t var) {
  Polynomial out(p.nvars(), p.field());
  for (const auto& [m, c] : p.terms()) {
    const auto e = m.exponent(var);
    if (e == 0) continue;
    out.add_term(m.quotient(Monomial::variable(var)), c * Scalar(static_cast<long>(e), p.field()));
  }
  return out;
}

TEST_CASE("property: derivative order does not matter") {
  Rng rng(derive_seed(7, 1, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
    const auto p = testutil::random_poly(rng, n, 5);
    auto vars = testutil::random_vars(rng, n, static_cast<std::uint32_t>(rng.uniform(1, 3)));
    const auto direct = partial_derivative(p, DerivativeMultiset::of(vars));
    std::sort(vars.begin(), vars.end());
    do {
      Polynomial step = p;
      for (auto v : vars) step = derive_once(step, v);
      CHECK(step == direct);
    } while (std::next_permutation(vars.begin(), vars.end()));
  }
}

TEST_CASE("property: Leibniz rule over all splits of the multiset") {
  Rng rng(derive_seed(7, 2, 0));
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
    const auto a = testutil::random_poly(rng, n, 3);
    const auto b = testutil::random_poly(rng, n, 3);
    const auto vars = testutil::random_vars(rng, n, static_cast<std::uint32_t>(rng.uniform(0, 3)));
    // Sum over subsets S of positions: d_S(a) * d_{X\S}(b).
    Polynomial sum(n);
    for (unsigned mask = 0; mask < (1u << vars.size()); ++mask) {
      std::vector<std::uint32_t> s, rest;
      for (std::size_t i = 0; i < vars.size(); ++i) ((mask >> i) & 1 ? s : rest).push_back(vars[i]);
      sum += partial_derivative(a, DerivativeMultiset::of(s)) * partial_derivative(b, DerivativeMultiset::of(rest));
    }
    CHECK(partial_derivative(a * b, DerivativeMultiset::of(vars)) == sum);
  }
}

TEST_CASE("linear projection") {
  const auto collapse = LinearMap::from_matrix(1, {{Scalar(1)}, {Scalar(1)}});
  CHECK(apply_linear_map(P("x1*x2", 2), collapse) == P("x1^2", 1));
  const auto id = LinearMap::from_matrix(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto p = P("3/2*x1^2*x3 - x2", 3);
  CHECK(apply_linear_map(p, id) == p);
  const auto swap = LinearMap::from_matrix(2, {{0, 1}, {1, 0}});
  CHECK(apply_linear_map(P("x1^2*x2", 2), swap) == P("x1*x2^2", 2));
}

TEST_CASE("homogeneity") {
  auto h = is_homogeneous(P("x1^2 + x1*x2", 2));
  CHECK(h.homogeneous);
  CHECK(h.degree == 2u);
  CHECK_FALSE(is_homogeneous(P("x1 + x1*x2", 2)).homogeneous);
  h = is_homogeneous(Polynomial(2));
  CHECK(h.homogeneous);
  CHECK_FALSE(h.degree.has_value());
}

TEST_CASE("monomial enumeration and counts") {
  const auto m = enumerate_monomials(2, 2);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == Monomial{{1, 2}});
  CHECK(m[1] == (Monomial{{1, 1}, {2, 1}}));
  CHECK(m[2] == Monomial{{2, 2}});
  REQUIRE(enumerate_monomials(3, 0).size() == 1);
  CHECK(enumerate_monomials(3, 0)[0].is_one());

  CHECK(count_monomials(3, 2) == 6);
  CHECK(count_monomials(7, 0) == 1);
  CHECK(count_monomials(5, 3) == 35);
  CHECK_THROWS_AS(count_monomials(0, 2), DomainError);
  for (std::uint32_t n = 1; n <= 5; ++n)
    for (std::uint32_t d = 0; d <= 5; ++d)
      CHECK(count_monomials(n, d) == static_cast<unsigned long>(enumerate_monomials(n, d).size()));
}

TEST_CASE("property: graded-lex order is a total order led by degree") {
  std::vector<Monomial> all;
  for (std::uint32_t d = 0; d <= 4; ++d)
    for (const auto& m : enumerate_monomials(3, d)) all.push_back(m);
  for (const auto& a : all) {
    CHECK(graded_lex_compare(a, a) == 0);
    for (const auto& b : all) {
      const int ab = graded_lex_compare(a, b);
      CHECK((ab == 0) == (a == b));
      CHECK((ab < 0) == (graded_lex_compare(b, a) > 0));
      if (a.degree() > b.degree()) CHECK(ab < 0);
    }
  }
  // Transitivity on a sample of triples.
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 1; j < all.size(); j += 5)
      for (std::size_t k = 2; k < all.size(); k += 7)
        if (graded_lex_compare(all[i], all[j]) < 0 && graded_lex_compare(all[j], all[k]) < 0)
          CHECK(graded_lex_compare(all[i], all[k]) < 0);
}

TEST_CASE("text format round trip") {
  Rng rng(derive_seed(7, 3, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
    auto p = testutil::random_poly(rng, n, 4);
    p = p.scaled(Scalar(mpq_class(1, static_cast<unsigned long>(rng.uniform(1, 5)))));
    CHECK(parse_polynomial(format_polynomial(p), n) == p);
  }
  CHECK(parse_polynomial(" 3/2 * x1^2*x3 -x2 ") == P("3/2*x1^2*x3 - x2", 3));
  CHECK(format_polynomial(Polynomial(2)) == "0");
  CHECK_THROWS_AS(parse_polynomial("x0"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), DimensionError);
}

TEST_CASE("field parsing") {
  CHECK(Field::parse("rational") == Field::rational());
  CHECK(Field::parse("prime").modulus == kDefaultPrime);
  CHECK(Field::parse("prime:13").modulus == 13);
  CHECK_THROWS_AS(Field::parse("prime:12"), DomainError);
  CHECK_THROWS_AS(Field::parse("complex"), ParseError);
}

TEST_CASE("primes") {
  CHECK(largest_prime_in(8, 16) == 13u);
  CHECK(largest_prime_in(2, 2) == 2u);
  CHECK_FALSE(largest_prime_in(24, 28).has_value());
  CHECK(is_prime_u64(kDefaultPrime));
  // Agreement with trial division.
  for (std::uint64_t v = 0; v < 3000; ++v) {
    bool prime = v >= 2;
    for (std::uint64_t f = 2; f * f <= v && prime; ++f) prime = v % f != 0;
    CHECK(is_prime_u64(v) == prime);
  }
}

TEST_CASE("rank engine") {
  CHECK(span_rank({P("x1", 2), P("x2", 2), P("x1 + x2", 2)}) == 2);
  CHECK(span_rank({}) == 0);
  CHECK(span_rank({Polynomial(2)}) == 0);
  EchelonSpan span;
  CHECK(span.add(P("x1^2 + x2", 2)));
  CHECK(span.add(P("x2", 2)));
  CHECK_FALSE(span.add(P("3*x1^2", 2)));
  CHECK(span.contains(P("x1^2 - 5*x2", 2)));
  CHECK_FALSE(span.contains(P("x1*x2", 2)));
  // Dependent over F_7 only: rows (1,1) and (1,8).
  const std::vector<Polynomial> rows = {P("x1 + x2", 2), P("x1 + 8*x2", 2)};
  CHECK(span_rank(rows) == 2);
  CHECK(span_rank(rows, Field::prime(7)) == 1);
}

TEST_CASE("rank budget guard") {
  std::vector<Polynomial> polys;
  for (const auto& m : enumerate_monomials(4, 3)) polys.push_back(Polynomial::monomial(m, Scalar(1), 4));
  Budget tiny;
  tiny.max_entries = 5;
  CHECK_THROWS_AS(span_rank(polys, Field::rational(), tiny), BudgetExceeded);
}
