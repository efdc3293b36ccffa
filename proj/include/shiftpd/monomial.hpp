#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace shiftpd {

// Monic monomial x_{i1}^{e1} ... stored as (variable, exponent) pairs sorted by
// variable, exponents positive. Variables are 1-based.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  Monomial(std::initializer_list<Factor> factors) : Monomial(std::vector<Factor>(factors)) {}

  static Monomial variable(std::uint32_t var, std::uint32_t exp = 1);
  // Product of the listed variables (repeats allowed).
  static Monomial from_variables(const std::vector<std::uint32_t>& vars);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(std::uint32_t var) const;
  // Largest variable index used, 0 for the constant monomial.
  std::uint32_t max_variable() const { return factors_.empty() ? 0 : factors_.back().first; }

  bool divides(const Monomial& other) const;
  // this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::size_t hash() const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

// Graded lexicographic order, read as "a is listed before b": higher degree
// first, then larger exponent of x1, then of x2, and so on. This is the order
// of enumerate_monomials, of printed polynomials and of matrix columns.
// Returns <0, 0, >0.
int graded_lex_compare(const Monomial& a, const Monomial& b);

struct GradedLexBefore {
  bool operator()(const Monomial& a, const Monomial& b) const { return graded_lex_compare(a, b) < 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// All monomials of degree `deg` in x1..xn, in graded-lex order.
std::vector<Monomial> enumerate_monomials(std::uint32_t n, std::uint32_t deg);

// All degree-`k` monomials dividing m (sub-multisets of size k), graded-lex order.
std::vector<Monomial> sub_monomials(const Monomial& m, std::uint32_t k);

}  // namespace shiftpd
