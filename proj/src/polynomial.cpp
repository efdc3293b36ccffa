#include "shiftpd/polynomial.hpp"

#include <cctype>
#include <string>
#include <unordered_map>

#include "shiftpd/errors.hpp"

namespace shiftpd {

Polynomial Polynomial::constant(const Scalar& c, std::uint32_t nvars) {
  Polynomial p(nvars, c.field());
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(std::uint32_t var, std::uint32_t nvars, Field field) {
  if (var == 0 || var > nvars) throw DimensionError("variable x" + std::to_string(var) + " outside x1..x" + std::to_string(nvars));
  Polynomial p(nvars, field);
  p.add_term(Monomial::variable(var), Scalar(1, field));
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Scalar& c, std::uint32_t nvars) {
  Polynomial p(nvars, c.field());
  p.add_term(m, c);
  return p;
}

std::optional<std::uint32_t> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();  // graded order puts the top degree first
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0, field_) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.field() != field_) throw DimensionError("mixed fields: " + field_.name() + " and " + c.field().name());
  if (m.max_variable() > nvars_)
    throw DimensionError("variable x" + std::to_string(m.max_variable()) + " outside x1..x" + std::to_string(nvars_));
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_)
    throw DimensionError("nvars mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
  if (field_ != o.field_) throw DimensionError("mixed fields: " + field_.name() + " and " + o.field_.name());
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_, field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  Polynomial r(a.nvars_, a.field_);
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) r.terms_.emplace(m, std::move(c));
  }
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(nvars_, field_);
  if (c.field() != field_) throw DimensionError("mixed fields in scaling");
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
  if (m.max_variable() > nvars_) throw DimensionError("shift monomial uses a variable outside the ambient space");
  Polynomial r(nvars_, field_);
  // Multiplying by a fixed monomial preserves graded-lex order.
  for (const auto& [t, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, v);
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(Scalar(1, field_), nvars_);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::with_nvars(std::uint32_t n) const {
  for (const auto& [m, c] : terms_) {
    if (m.max_variable() > n) throw DimensionError("with_nvars would drop a used variable");
  }
  Polynomial r(n, field_);
  r.terms_ = terms_;
  return r;
}

Polynomial Polynomial::to_field(Field f) const {
  if (f == field_) return *this;
  Polynomial r(nvars_, f);
  for (const auto& [m, c] : terms_) r.add_term(m, c.to_field(f));
  return r;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial partial_derivative(const Polynomial& p, const DerivativeMultiset& x) {
  const Monomial& dm = x.as_monomial();
  if (dm.max_variable() > p.nvars())
    throw DimensionError("derivative variable x" + std::to_string(dm.max_variable()) + " outside x1..x" +
                         std::to_string(p.nvars()));
  if (p.field().is_prime()) {
    auto deg = p.degree();
    if (deg && p.field().modulus <= *deg)
      throw DomainError("derivatives over F_p need p > degree (p = " + std::to_string(p.field().modulus) + ")");
  }
  Polynomial r(p.nvars(), p.field());
  if (dm.is_one()) return p;
  for (const auto& [m, c] : p.terms()) {
    if (!dm.divides(m)) continue;
    mpz_class mult = 1;
    for (const auto& [var, cnt] : dm.factors()) {
      std::uint32_t e = m.exponent(var);
      for (std::uint32_t j = 0; j < cnt; ++j) mult *= (e - j);
    }
    r.add_term(m.quotient(dm), c * Scalar(mpz_class(mult), p.field()));
  }
  return r;
}

void LinearMap::validate() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& img = images[i];
    if (img.nvars() != target_vars)
      throw DimensionError("image of x" + std::to_string(i + 1) + " is not over z1..z" + std::to_string(target_vars));
    for (const auto& [m, c] : img.terms()) {
      if (m.degree() != 1) throw DomainError("image of x" + std::to_string(i + 1) + " is not a linear form");
    }
  }
}

LinearMap LinearMap::from_matrix(std::uint32_t n0, const std::vector<std::vector<Scalar>>& rows) {
  LinearMap L;
  L.target_vars = n0;
  for (const auto& row : rows) {
    if (row.size() != n0) throw DimensionError("linear map row has wrong length");
    Field f = row.empty() ? Field{} : row.front().field();
    Polynomial img(n0, f);
    for (std::uint32_t j = 0; j < n0; ++j) img.add_term(Monomial::variable(j + 1), row[j]);
    L.images.push_back(std::move(img));
  }
  return L;
}

Polynomial apply_linear_map(const Polynomial& p, const LinearMap& L) {
  L.validate();
  Field f = p.field();
  Polynomial r(L.target_vars, f);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> powers;
  auto power = [&](std::uint32_t var, std::uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(var, e);
    auto it = powers.find(key);
    if (it == powers.end()) {
      Polynomial img = L.images[var - 1].to_field(f);
      it = powers.emplace(key, img.pow(e)).first;
    }
    return it->second;
  };
  for (const auto& [m, c] : p.terms()) {
    if (m.max_variable() > L.images.size())
      throw DimensionError("linear map has no image for x" + std::to_string(m.max_variable()));
    Polynomial term = Polynomial::constant(c, L.target_vars);
    for (const auto& [var, e] : m.factors()) {
      term = term * power(var, e);
      if (term.is_zero()) break;
    }
    r += term;
  }
  return r;
}

Homogeneity is_homogeneous(const Polynomial& p) {
  Homogeneity h;
  if (p.is_zero()) return h;
  std::uint32_t d = p.terms().begin()->first.degree();
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != d) {
      h.homogeneous = false;
      return h;
    }
  }
  h.degree = d;
  return h;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class count_monomials(std::uint64_t a, std::uint64_t b) {
  if (a == 0) {
    if (b > 0) throw DomainError("M(0, b) with b > 0 is undefined");
    return 1;
  }
  return binomial(a + b - 1, b);
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, Field f) : s_(s), field_(f) {}

  std::vector<std::pair<Monomial, Scalar>> parse() {
    std::vector<std::pair<Monomial, Scalar>> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial text");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      auto term = parse_term();
      if (sign < 0) term.second = -term.second;
      terms.push_back(std::move(term));
      first = false;
      skip_ws();
    }
    return terms;
  }

 private:
  std::pair<Monomial, Scalar> parse_term() {
    Scalar coeff(1, field_);
    Monomial mono;
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) throw error("unexpected end of input");
      char c = peek();
      if (c == 'x') {
        ++pos_;
        std::uint64_t var = parse_uint("variable index");
        if (var == 0 || var > UINT32_MAX) throw error("variable index out of range");
        std::uint64_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          e = parse_uint("exponent");
          if (e > UINT32_MAX) throw error("exponent too large");
        }
        mono = mono * Monomial::variable(static_cast<std::uint32_t>(var), static_cast<std::uint32_t>(e));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = digits();
        skip_ws();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip_ws();
          std::string den = digits();
          if (den.empty()) throw error("missing denominator");
          num += "/" + den;
        }
        coeff *= Scalar::parse(num, field_);
      } else {
        throw error(std::string("unexpected character '") + c + "'");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) throw error("empty term");
    return {mono, coeff};
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint64_t parse_uint(const char* what) {
    std::string d = digits();
    if (d.empty()) throw error(std::string("expected ") + what);
    if (d.size() > 12) throw error(std::string(what) + " too large");
    return std::stoull(d);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  ParseError error(const std::string& msg) const {
    return ParseError("polynomial text, offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  Field field_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<std::uint32_t> nvars, Field field) {
  auto terms = PolyParser(text, field).parse();
  std::uint32_t used = 0;
  for (const auto& [m, c] : terms) used = std::max(used, m.max_variable());
  std::uint32_t n = nvars.value_or(used);
  if (used > n) throw DimensionError("polynomial uses x" + std::to_string(used) + " but nvars = " + std::to_string(n));
  Polynomial p(n, field);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

std::string format_monomial(const Monomial& m) {
  std::string out;
  for (const auto& [var, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(var);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    mpq_class v = c.value();
    bool neg = sgn(v) < 0 && !p.field().is_prime();
    if (neg) v = -v;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += v.get_str();
    } else if (v == 1) {
      out += format_monomial(m);
    } else {
      out += v.get_str() + '*' + format_monomial(m);
    }
  }
  return out;
}

}  // namespace shiftpd
