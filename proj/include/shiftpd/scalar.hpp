#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace shiftpd {

// 2^61 - 1, a Mersenne prime.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

// Coefficient field: the rationals (modulus 0) or F_p.
struct Field {
  std::uint64_t modulus = 0;

  static Field rational() { return Field{0}; }
  static Field prime(std::uint64_t p = kDefaultPrime);
  // Accepts "rational", "prime" (default prime) or "prime:<p>".
  static Field parse(std::string_view text);

  bool is_prime() const { return modulus != 0; }
  std::string name() const;
  friend bool operator==(const Field&, const Field&) = default;
};

// Exact field element. In F_p the value is kept as an integer in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v, Field f = {});  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v, Field f = {});
  Scalar(const mpz_class& v, Field f = {});

  // "3", "-3/2" (and, for F_p, any integer or fraction with invertible denominator).
  static Scalar parse(std::string_view text, Field f = {});

  const mpq_class& value() const { return value_; }
  Field field() const { return field_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  // For F_p: the element as an unsigned residue.
  std::uint64_t residue() const;

  Scalar to_field(Field f) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  std::string str() const { return value_.get_str(); }

 private:
  void reduce();
  void check_same_field(const Scalar& o) const;

  mpq_class value_{0};
  Field field_{};
};

// Modular helpers shared by the prime-mode rank engine.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
// Image of a rational in F_p; throws DomainError when p divides the denominator.
std::uint64_t rational_mod(const mpq_class& q, std::uint64_t p);

}  // namespace shiftpd
