#include "shiftpd/monomial.hpp"

#include <algorithm>
#include <functional>

#include "shiftpd/errors.hpp"

namespace shiftpd {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [var, exp] : factors) {
    if (var == 0) throw DomainError("variable indices are 1-based");
    if (exp == 0) continue;
    if (!factors_.empty() && factors_.back().first == var) {
      factors_.back().second += exp;
    } else {
      factors_.emplace_back(var, exp);
    }
    degree_ += exp;
  }
}

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exp) { return Monomial({{var, exp}}); }

Monomial Monomial::from_variables(const std::vector<std::uint32_t>& vars) {
  std::vector<Factor> f;
  f.reserve(vars.size());
  for (auto v : vars) f.emplace_back(v, 1);
  return Monomial(std::move(f));
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{var, 0});
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  auto it = other.factors_.begin();
  for (const auto& [var, exp] : factors_) {
    while (it != other.factors_.end() && it->first < var) ++it;
    if (it == other.factors_.end() || it->first != var || it->second < exp) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial r;
  auto it = other.factors_.begin();
  for (const auto& [var, exp] : factors_) {
    std::uint32_t sub = 0;
    while (it != other.factors_.end() && it->first < var) ++it;
    if (it != other.factors_.end() && it->first == var) sub = it->second;
    if (sub > exp) throw DomainError("monomial quotient is not a monomial");
    if (exp > sub) {
      r.factors_.emplace_back(var, exp - sub);
      r.degree_ += exp - sub;
    }
  }
  if (r.degree_ + other.degree_ != degree_) throw DomainError("monomial quotient is not a monomial");
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [var, exp] : factors_) {
    h ^= (static_cast<std::size_t>(var) * 0x100000001b3ULL + exp) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int graded_lex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size()) return -1;
    if (i == fa.size()) return 1;
    // The monomial carrying the smaller variable has the larger exponent there.
    if (fa[i].first != fb[j].first) return fa[i].first < fb[j].first ? -1 : 1;
    if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

std::vector<Monomial> enumerate_monomials(std::uint32_t n, std::uint32_t deg) {
  std::vector<Monomial> out;
  if (deg == 0) {
    out.emplace_back();
    return out;
  }
  if (n == 0) return out;
  std::vector<Monomial::Factor> cur;
  // Exponent of x_var runs from high to low, which yields graded-lex order.
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t var, std::uint32_t left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (var == n) {
      cur.emplace_back(var, left);
      out.emplace_back(cur);
      cur.pop_back();
      return;
    }
    for (std::uint32_t e = left + 1; e-- > 0;) {
      if (e) cur.emplace_back(var, e);
      rec(var + 1, left - e);
      if (e) cur.pop_back();
    }
  };
  rec(1, deg);
  return out;
}

std::vector<Monomial> sub_monomials(const Monomial& m, std::uint32_t k) {
  std::vector<Monomial> out;
  if (k > m.degree()) return out;
  const auto& f = m.factors();
  std::vector<Monomial::Factor> cur;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t idx, std::uint32_t left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (idx == f.size()) return;
    std::uint32_t top = std::min(left, f[idx].second);
    for (std::uint32_t e = top + 1; e-- > 0;) {
      if (e) cur.emplace_back(f[idx].first, e);
      rec(idx + 1, left - e);
      if (e) cur.pop_back();
    }
  };
  rec(0, k);
  return out;
}

}  // namespace shiftpd
