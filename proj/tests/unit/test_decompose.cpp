#include "shiftpd/bounds.hpp"
#include "shiftpd/decompose.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/formula_gen.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/upt.hpp"
#include "test_util.hpp"

using namespace shiftpd;
using testutil::P;

namespace {

// Sum of `s` products of d inputs each.
Formula sum_of_products(std::uint32_t n, std::uint32_t d, std::size_t s, Rng& rng) {
  FormulaBuilder b(n);
  std::vector<std::size_t> prods;
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::size_t> ins;
    for (std::uint32_t j = 0; j < d; ++j) ins.push_back(b.input(static_cast<std::uint32_t>(rng.uniform(1, n))));
    prods.push_back(b.mul(ins));
  }
  return b.build(b.add(prods));
}

ProductDecomposition one_summand(const std::vector<Polynomial>& factors) {
  ProductDecomposition pd;
  pd.nvars = factors.front().nvars();
  Summand s;
  for (const auto& f : factors) {
    s.factors.push_back(f);
    s.degrees.push_back(*f.degree());
  }
  pd.summands.push_back(s);
  return pd;
}

}  // namespace

TEST_CASE("low-depth decomposition of a sum of products") {
  Rng rng(derive_seed(17, 1, 0));
  // Distinct variable sets keep the products from merging.
  FormulaBuilder b(6);
  const auto f = b.build(b.add({b.mul({b.input(1), b.input(2)}), b.mul({b.input(3), b.input(4)}),
                                b.mul({b.input(5), b.input(6)})}));
  const auto pd = low_depth_decompose(f);
  CHECK(pd.s() == 3);
  CHECK(pd.product_depth == 1);
  for (const auto& s : pd.summands) CHECK(s.degrees == std::vector<std::uint32_t>{1, 1});
  CHECK(pd.recombine() == eval_formula(f));

  for (std::uint32_t d = 2; d <= 6; ++d) {
    const auto g = sum_of_products(3, d, 4, rng);
    const auto dec = low_depth_decompose(g);
    CHECK(dec.s() == 4);
    for (const auto& s : dec.summands) CHECK(s.factors.size() >= d);
  }
}

TEST_CASE("low-depth decomposition of a single product gate") {
  FormulaBuilder b(3);
  const auto f = b.build(b.mul({b.input(1), b.input(2), b.input(3)}));
  const auto pd = low_depth_decompose(f);
  REQUIRE(pd.s() == 1);
  CHECK(pd.summands[0].factors.size() == 3);
  CHECK(pd.recombine() == P("x1*x2*x3", 3));
}

TEST_CASE("low-depth decomposition preconditions") {
  FormulaBuilder b(2);
  CHECK_THROWS_AS(low_depth_decompose(b.build(b.input(1))), PreconditionError);
  FormulaBuilder c(2);
  CHECK_THROWS_AS(low_depth_decompose(c.build(c.add({c.input(1), c.mul({c.input(1), c.input(2)})}))),
                  PreconditionError);
  FormulaBuilder z(2);
  const auto cancel = z.build(z.add({{z.mul({z.input(1), z.input(2)}), Scalar(1)},
                                     {z.mul({z.input(2), z.input(1)}), Scalar(-1)}}));
  CHECK_THROWS_AS(low_depth_decompose(cancel), PreconditionError);
}

TEST_CASE("upt decomposition examples") {
  FormulaBuilder b(2);
  const auto single = upt_log_product_decompose(b.build(b.input(2)));
  REQUIRE(single.s() == 1);
  CHECK(single.summands[0].degrees == std::vector<std::uint32_t>{1});

  FormulaBuilder c(3);
  const auto chain = c.build(c.mul({c.input(1), c.mul({c.input(2), c.input(3)})}));
  const auto pd = upt_log_product_decompose(chain);
  for (const auto& s : pd.summands) CHECK(s.degrees == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(pd.recombine() == P("x1*x2*x3", 3));

  FormulaBuilder u(4);
  const auto bal = u.mul({u.mul({u.input(1), u.input(2)}), u.mul({u.input(3), u.input(4)})});
  const auto cat = u.mul({u.input(1), u.mul({u.input(2), u.mul({u.input(3), u.input(4)})})});
  CHECK_THROWS_AS(upt_log_product_decompose(u.build(u.add({bal, cat}))), PreconditionError);
}

TEST_CASE("property: upt decomposition summands share the deg-seq degrees") {
  Rng rng(derive_seed(17, 2, 0));
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
    const auto d = static_cast<std::size_t>(rng.uniform(1, 8));
    const auto f = random_upt_formula(rng, n, random_binary_tree(rng, d), 30);
    const auto pd = upt_log_product_decompose(f);
    const auto ds = deg_seq(*is_upt(f).tree);
    for (const auto& s : pd.summands) CHECK(s.degrees == ds.degrees);
    CHECK(pd.recombine() == eval_formula(f));
    CHECK(pd.s() <= f.size());
  }
}

TEST_CASE("low-depth parameters") {
  for (std::uint32_t d = 1; d <= 30; ++d) {
    const auto p = low_depth_k(d, 1);
    CHECK(p.tau == d);
    CHECK(p.alpha == 1);
    CHECK(p.k == d / 2);
  }
  const auto p = low_depth_k(16, 2);
  CHECK(p.tau == 4);
  CHECK(p.alpha == mpq_class(3, 4));
  CHECK(p.k == 6);
  // tau = floor(81^(1/4)) = 3; alpha = 1 - 1/3 + 1/27.
  const auto q = low_depth_k(81, 3);
  CHECK(q.tau == 3);
  CHECK(q.alpha == mpq_class(19, 27));
  CHECK(low_depth_k(3, 2).degenerate);
  CHECK_THROWS_AS(low_depth_k(0, 1), DomainError);
}

TEST_CASE("property: low-depth parameter ranges when tau >= 2") {
  for (std::uint32_t d = 2; d <= 400; d += 3)
    for (std::uint32_t delta = 1; delta <= 4; ++delta) {
      const auto p = low_depth_k(d, delta);
      if (p.tau < 2) continue;
      CHECK(p.alpha >= mpq_class(1, 2));
      CHECK(p.alpha <= 1);
      CHECK(p.k >= d / 3);
      CHECK(2 * p.k <= d);
      CHECK(mpq_class(static_cast<unsigned long>(p.k)) <= p.alpha * (d - p.k));
    }
}

TEST_CASE("residue floor") {
  Rng rng(derive_seed(17, 3, 0));
  const auto f = sum_of_products(3, 5, 3, rng);
  const auto pd = low_depth_decompose(f);
  CHECK(check_residue_floor(pd, 2, 0).holds);
  // All factors linear with k/d in [1/4, 1/2]: each residue is k/2 >= d/8.
  for (std::uint32_t d = 4; d <= 16; ++d) {
    const auto g = sum_of_products(3, d, 2, rng);
    const auto params = low_depth_k(d, 1);
    const auto report = check_residue_floor(low_depth_decompose(g), static_cast<std::uint32_t>(params.k),
                                            mpq_class(static_cast<unsigned long>(params.tau), 8));
    CHECK(report.holds);
  }
}

TEST_CASE("structural conditions on summands") {
  // Eight linear factors with d = 8, Delta = 1: the first condition.
  std::vector<Polynomial> linear;
  for (std::uint32_t i = 1; i <= 8; ++i) linear.push_back(Polynomial::variable(i, 8));
  auto r = check_lds_conditions(one_summand(linear), 8, 1);
  CHECK(r.holds);
  CHECK(r.summands[0].many_linear);
  // d = 16, Delta = 2, four factors of degree 4 = sqrt(16): the second condition at delta = 2.
  std::vector<Polynomial> quartic;
  for (std::uint32_t i = 1; i <= 4; ++i) quartic.push_back(Polynomial::variable(i, 4).pow(4));
  r = check_lds_conditions(one_summand(quartic), 16, 2);
  CHECK(r.holds);
  CHECK_FALSE(r.summands[0].many_linear);
  CHECK(r.summands[0].delta == 2u);
  // Two factors of degree 8 meet neither.
  r = check_lds_conditions(one_summand({P("x1^8", 2), P("x2^8", 2)}), 16, 2);
  CHECK_FALSE(r.holds);

  CHECK(pow2_power_at_least(2, 2, 16));
  CHECK_FALSE(pow2_power_at_least(3, 1, 10));
  CHECK(pow2_power_at_least(1u << 31, 6, ~0ull));
}

TEST_CASE("property: shifted partials stay under the summed product bounds") {
  Rng rng(derive_seed(17, 4, 0));
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::uint32_t>(rng.uniform(2, 3));
    const auto d = static_cast<std::uint32_t>(rng.uniform(3, 6));
    const auto f = random_low_depth_formula(rng, n, d, static_cast<std::uint32_t>(rng.uniform(1, 2)), 30);
    const auto p = eval_formula(f);
    if (p.is_zero()) continue;
    const auto k = static_cast<std::uint32_t>(rng.uniform(1, d - 1));
    const auto l = static_cast<std::uint32_t>(rng.uniform(0, 2));
    const auto pd = low_depth_decompose(f);
    if (!check_residue_floor(pd, k, 0).minimum || *check_residue_floor(pd, k, 0).minimum <= 0) continue;
    mpz_class total = 0;
    for (const auto& s : pd.summands) total += product_sp_bound(n, s.degrees, k, l);
    CHECK(mpz_class(static_cast<unsigned long>(sp_measure(p, k, l).dimension)) <= total);
    ++checked;
  }
  CHECK(checked >= 10);
}
