#include "shiftpd/formula_gen.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {

constexpr int kMaxAttempts = 2000;

Scalar random_coeff(Rng& rng) {
  std::int64_t c = rng.uniform(1, 3);
  return Scalar(rng.coin() ? c : -c);
}

std::size_t random_linear(Rng& rng, FormulaBuilder& b, std::uint32_t n) {
  if (n < 2 || rng.uniform(0, 2) != 2) return b.input(static_cast<std::uint32_t>(rng.uniform(1, n)));
  std::uint32_t v1 = static_cast<std::uint32_t>(rng.uniform(1, n));
  std::uint32_t v2 = static_cast<std::uint32_t>(rng.uniform(1, n - 1));
  if (v2 >= v1) ++v2;  // distinct, so the form is never 0
  return b.add({{b.input(v1), random_coeff(rng)}, {b.input(v2), random_coeff(rng)}});
}

Formula retry(std::uint32_t n, std::size_t max_gates, const std::string& what,
              const std::function<std::size_t(FormulaBuilder&)>& body) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    FormulaBuilder b(n);
    std::size_t root = body(b);
    Formula f = b.build(root);
    if (f.size() <= max_gates) return f;
  }
  throw DomainError(what + ": no formula within " + std::to_string(max_gates) + " gates");
}

std::size_t upt_gates(Rng& rng, FormulaBuilder& b, std::uint32_t n, const BinaryTree& t, int level) {
  if (t.is_leaf()) return random_linear(rng, b, n);
  if (level < 2 && rng.uniform(0, 3) == 0) {
    std::size_t l = upt_gates(rng, b, n, t, level + 1);
    std::size_t r = upt_gates(rng, b, n, t, level + 1);
    return b.add({{l, random_coeff(rng)}, {r, random_coeff(rng)}});
  }
  std::size_t l = upt_gates(rng, b, n, t.left(), level);
  std::size_t r = upt_gates(rng, b, n, t.right(), level);
  if (rng.coin()) std::swap(l, r);
  return b.mul(std::vector<std::size_t>{l, r});
}

}  // namespace

BinaryTree random_binary_tree(Rng& rng, std::size_t leaves) {
  if (leaves == 0) throw DomainError("a binary tree needs at least one leaf");
  if (leaves == 1) return BinaryTree::leaf();
  auto a = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(leaves) - 1));
  BinaryTree l = random_binary_tree(rng, a);
  return BinaryTree::join(l, random_binary_tree(rng, leaves - a));
}

Formula random_homogeneous_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::size_t max_gates) {
  if (n == 0 || d == 0) throw DomainError("random formula needs n, d >= 1");
  std::function<std::size_t(FormulaBuilder&, std::uint32_t, int)> gen = [&](FormulaBuilder& b, std::uint32_t deg,
                                                                           int level) -> std::size_t {
    if (deg == 1) return random_linear(rng, b, n);
    if (level < 3 && rng.uniform(0, 3) == 0) {
      std::size_t l = gen(b, deg, level + 1);
      std::size_t r = gen(b, deg, level + 1);
      return b.add({{l, random_coeff(rng)}, {r, random_coeff(rng)}});
    }
    std::uint32_t a = static_cast<std::uint32_t>(rng.uniform(1, deg - 1));
    std::size_t l = gen(b, a, level);
    std::size_t r = gen(b, deg - a, level);
    return b.mul(std::vector<std::size_t>{l, r});
  };
  return retry(n, max_gates, "random_homogeneous_formula", [&](FormulaBuilder& b) { return gen(b, d, 0); });
}

Formula random_upt_formula(Rng& rng, std::uint32_t n, const BinaryTree& shape, std::size_t max_gates) {
  if (n == 0) throw DomainError("random formula needs n >= 1");
  return retry(n, max_gates, "random_upt_formula", [&](FormulaBuilder& b) { return upt_gates(rng, b, n, shape, 0); });
}

Formula random_two_shape_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::size_t max_gates) {
  if (n == 0 || d == 0) throw DomainError("random formula needs n, d >= 1");
  return retry(n, max_gates, "random_two_shape_formula", [&](FormulaBuilder& b) {
    const BinaryTree s1 = random_binary_tree(rng, d);
    const BinaryTree s2 = random_binary_tree(rng, d);
    std::size_t l = upt_gates(rng, b, n, s1, 2);
    std::size_t r = upt_gates(rng, b, n, s2, 2);
    return b.add({{l, random_coeff(rng)}, {r, random_coeff(rng)}});
  });
}

Formula random_low_depth_formula(Rng& rng, std::uint32_t n, std::uint32_t d, std::uint32_t delta,
                                 std::size_t max_gates) {
  if (n == 0 || d == 0 || delta == 0) throw DomainError("random low-depth formula needs n, d, delta >= 1");
  std::function<std::size_t(FormulaBuilder&, std::uint32_t, std::uint32_t)> gen =
      [&](FormulaBuilder& b, std::uint32_t deg, std::uint32_t depth) -> std::size_t {
    if (deg == 1) return random_linear(rng, b, n);
    auto product = [&]() {
      std::vector<std::uint32_t> parts;
      if (depth == 1) {
        parts.assign(deg, 1);
      } else {
        auto most = static_cast<std::int64_t>(std::min<std::uint32_t>(deg, 4));
        parts = random_composition(rng, deg, static_cast<std::uint32_t>(rng.uniform(2, most)));
      }
      std::vector<std::size_t> kids;
      for (auto p : parts) kids.push_back(gen(b, p, depth - 1));
      return b.mul(kids);
    };
    const std::int64_t u = rng.uniform(1, 3);
    if (u == 1) return product();
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (std::int64_t i = 0; i < u; ++i) {
      std::size_t t = product();
      terms.emplace_back(t, random_coeff(rng));
    }
    return b.add(std::move(terms));
  };
  return retry(n, max_gates, "random_low_depth_formula", [&](FormulaBuilder& b) { return gen(b, d, delta); });
}

}  // namespace shiftpd
