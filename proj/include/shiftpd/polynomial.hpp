#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftpd/monomial.hpp"
#include "shiftpd/scalar.hpp"

namespace shiftpd {

// Exact sparse polynomial in x1..x_nvars over one field. Terms are kept in
// graded-lex order with no zero coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLexBefore>;

  explicit Polynomial(std::uint32_t nvars = 0, Field field = {}) : nvars_(nvars), field_(field) {}

  static Polynomial constant(const Scalar& c, std::uint32_t nvars);
  static Polynomial variable(std::uint32_t var, std::uint32_t nvars, Field field = {});
  static Polynomial monomial(const Monomial& m, const Scalar& c, std::uint32_t nvars);

  std::uint32_t nvars() const { return nvars_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; nullopt for the zero polynomial.
  std::optional<std::uint32_t> degree() const;
  Scalar coefficient(const Monomial& m) const;

  // Adds c*m in place (merging like terms, dropping cancellations).
  void add_term(const Monomial& m, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  Polynomial pow(std::uint32_t e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  // Same terms in a larger (or equal) ambient variable count.
  Polynomial with_nvars(std::uint32_t n) const;
  // Reduce rational coefficients into F_p (identity when already there).
  Polynomial to_field(Field f) const;

 private:
  void check_compatible(const Polynomial& o) const;

  std::uint32_t nvars_;
  Field field_;
  Terms terms_;
};

// Named forms of the arithmetic operators.
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

// Multiset of variables to differentiate by; order = total multiplicity.
class DerivativeMultiset {
 public:
  DerivativeMultiset() = default;
  explicit DerivativeMultiset(Monomial m) : m_(std::move(m)) {}
  static DerivativeMultiset of(const std::vector<std::uint32_t>& vars) {
    return DerivativeMultiset(Monomial::from_variables(vars));
  }
  std::uint32_t order() const { return m_.degree(); }
  const Monomial& as_monomial() const { return m_; }

 private:
  Monomial m_;
};

// Analytic partial derivative with falling-factorial coefficients.
// Over F_p requires p > deg(p).
Polynomial partial_derivative(const Polynomial& p, const DerivativeMultiset& x);

// Linear map x_i -> L_i(z_1..z_n0); each image is a linear form or zero.
struct LinearMap {
  std::uint32_t target_vars = 0;
  std::vector<Polynomial> images;  // images[i-1] is the image of x_i

  // Checks every image is homogeneous linear (or zero) over target_vars.
  void validate() const;
  // Rows are source variables, columns z_1..z_n0.
  static LinearMap from_matrix(std::uint32_t n0, const std::vector<std::vector<Scalar>>& rows);
};

Polynomial apply_linear_map(const Polynomial& p, const LinearMap& L);

struct Homogeneity {
  bool homogeneous = true;
  std::optional<std::uint32_t> degree;  // nullopt for the zero polynomial or when not homogeneous
};
Homogeneity is_homogeneous(const Polynomial& p);

// M(a, b) = C(a+b-1, b): number of degree-b monomials in a variables.
mpz_class count_monomials(std::uint64_t a, std::uint64_t b);
mpz_class binomial(std::uint64_t n, std::uint64_t k);

// Text format: "3/2*x1^2*x3 - x2". Parsing infers nvars from the largest
// index unless `nvars` is given (it must then cover every index).
Polynomial parse_polynomial(std::string_view text, std::optional<std::uint32_t> nvars = std::nullopt,
                            Field field = {});
std::string format_polynomial(const Polynomial& p);
std::string format_monomial(const Monomial& m);

}  // namespace shiftpd
