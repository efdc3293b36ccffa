#include "shiftpd/scalar.hpp"

#include <string>

#include "shiftpd/errors.hpp"
#include "shiftpd/primes.hpp"

namespace shiftpd {

Field Field::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw DomainError("field modulus " + std::to_string(p) + " is not prime");
  return Field{p};
}

Field Field::parse(std::string_view text) {
  if (text == "rational" || text == "Q") return rational();
  if (text == "prime") return prime();
  constexpr std::string_view kPrefix = "prime:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    std::string digits(text.substr(kPrefix.size()));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad field modulus '" + digits + "'");
    return prime(std::stoull(digits));
  }
  throw ParseError("unknown field '" + std::string(text) + "' (expected rational or prime:<p>)");
}

std::string Field::name() const {
  return modulus == 0 ? std::string("rational") : "prime:" + std::to_string(modulus);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("division by zero in F_p");
  return pow_mod(a, p - 2, p);
}

static std::uint64_t mpz_mod(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_class pm;
  mpz_import(pm.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pm.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

std::uint64_t rational_mod(const mpq_class& q, std::uint64_t p) {
  std::uint64_t num = mpz_mod(q.get_num(), p);
  std::uint64_t den = mpz_mod(q.get_den(), p);
  if (den == 0) throw DomainError("denominator vanishes modulo " + std::to_string(p));
  return den == 1 ? num : mul_mod(num, inv_mod(den, p), p);
}

static mpq_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return mpq_class(z);
}

Scalar::Scalar(long v, Field f) : value_(v), field_(f) { reduce(); }
Scalar::Scalar(const mpq_class& v, Field f) : value_(v), field_(f) { reduce(); }
Scalar::Scalar(const mpz_class& v, Field f) : value_(v), field_(f) { reduce(); }

Scalar Scalar::parse(std::string_view text, Field f) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return Scalar(q, f);
}

void Scalar::reduce() {
  value_.canonicalize();
  if (field_.is_prime()) value_ = from_u64(rational_mod(value_, field_.modulus));
}

std::uint64_t Scalar::residue() const {
  if (!field_.is_prime()) throw DomainError("residue() on a rational scalar");
  return mpz_mod(value_.get_num(), field_.modulus);
}

Scalar Scalar::to_field(Field f) const {
  if (f == field_) return *this;
  if (field_.is_prime()) throw DimensionError("cannot lift an F_p scalar to another field");
  return Scalar(value_, f);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw DimensionError("mixed fields: " + field_.name() + " and " + o.field_.name());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.value_ = -r.value_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  value_ += o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  value_ -= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  value_ *= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  if (o.is_zero()) throw DomainError("division by zero");
  if (field_.is_prime()) {
    value_ *= from_u64(inv_mod(o.residue(), field_.modulus));
  } else {
    value_ /= o.value_;
  }
  reduce();
  return *this;
}

}  // namespace shiftpd
