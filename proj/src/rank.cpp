#include "shiftpd/rank.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {

using RowQ = std::vector<std::pair<std::uint32_t, mpz_class>>;
using RowP = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

void make_primitive(RowQ& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (const auto& e : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(r.front().second) < 0) g = -g;
  if (g != 1) {
    for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }
}

// r <- a*r - b*P, dropping zeros. Both rows sorted by column.
void combine(RowQ& r, const mpz_class& a, const mpz_class& b, const RowQ& P) {
  RowQ out;
  out.reserve(r.size() + P.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < r.size() || j < P.size()) {
    if (j == P.size() || (i < r.size() && r[i].first < P[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || P[j].first < r[i].first) {
      out.emplace_back(P[j].first, -b * P[j].second);
      ++j;
    } else {
      mpz_class v = a * r[i].second - b * P[j].second;
      if (sgn(v) != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.swap(out);
}

// r <- r - c*P mod p.
void combine(RowP& r, std::uint64_t c, const RowP& P, std::uint64_t p) {
  RowP out;
  out.reserve(r.size() + P.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < r.size() || j < P.size()) {
    if (j == P.size() || (i < r.size() && r[i].first < P[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || P[j].first < r[i].first) {
      out.emplace_back(P[j].first, (p - mul_mod(c, P[j].second, p)) % p);
      ++j;
    } else {
      std::uint64_t v = (r[i].second + p - mul_mod(c, P[j].second, p)) % p;
      if (v) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  r.swap(out);
}

}  // namespace

struct EchelonSpan::Impl {
  Budget budget;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> col_of;
  std::vector<Monomial> col_mon;
  std::unordered_map<std::uint32_t, std::size_t> pivot_row;
  std::vector<RowQ> rows_q;
  std::vector<RowP> rows_p;
  std::uint64_t entries = 0;

  std::uint32_t column(const Monomial& m) {
    auto [it, inserted] = col_of.try_emplace(m, static_cast<std::uint32_t>(col_mon.size()));
    if (inserted) col_mon.push_back(m);
    return it->second;
  }

  void charge(std::size_t n) {
    entries += n;
    if (entries > budget.max_entries)
      throw BudgetExceeded("elimination exceeds " + std::to_string(budget.max_entries) + " stored entries");
  }

  void reduce(RowQ& r) const {
    while (!r.empty()) {
      auto it = pivot_row.find(r.front().first);
      if (it == pivot_row.end()) return;
      const RowQ& P = rows_q[it->second];
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), P.front().second.get_mpz_t(), r.front().second.get_mpz_t());
      mpz_class a = P.front().second / g;
      mpz_class b = r.front().second / g;
      combine(r, a, b, P);
      make_primitive(r);
    }
  }

  void reduce(RowP& r, std::uint64_t p) const {
    while (!r.empty()) {
      auto it = pivot_row.find(r.front().first);
      if (it == pivot_row.end()) return;
      combine(r, r.front().second, rows_p[it->second], p);
    }
  }
};

EchelonSpan::EchelonSpan(Field mode, Budget budget) : mode_(mode), impl_(std::make_unique<Impl>()) {
  impl_->budget = budget;
}
EchelonSpan::~EchelonSpan() = default;
EchelonSpan::EchelonSpan(EchelonSpan&&) noexcept = default;
EchelonSpan& EchelonSpan::operator=(EchelonSpan&&) noexcept = default;

static void check_mode(const Polynomial& p, Field mode) {
  if (p.field() == mode) {
    if (!mode.is_prime()) return;
  } else if (p.field().is_prime() || !mode.is_prime()) {
    throw DimensionError("polynomial over " + p.field().name() + " in a " + mode.name() + " span");
  }
  auto deg = p.degree();
  if (deg && mode.modulus <= *deg)
    throw DomainError("prime mode needs p > degree (p = " + std::to_string(mode.modulus) + ", degree " +
                      std::to_string(*deg) + ")");
}

bool EchelonSpan::add(const Polynomial& p) {
  check_mode(p, mode_);
  ++generators_;
  if (p.is_zero()) return false;
  Impl& s = *impl_;
  if (!mode_.is_prime()) {
    mpz_class lcm = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.value().get_den_mpz_t());
    RowQ r;
    r.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) {
      mpz_class v = c.value().get_num() * (lcm / c.value().get_den());
      r.emplace_back(s.column(m), std::move(v));
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    make_primitive(r);
    s.reduce(r);
    if (r.empty()) return false;
    s.charge(r.size());
    s.pivot_row.emplace(r.front().first, s.rows_q.size());
    s.rows_q.push_back(std::move(r));
  } else {
    const std::uint64_t q = mode_.modulus;
    RowP r;
    r.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) {
      std::uint64_t v = c.field().is_prime() ? c.residue() : rational_mod(c.value(), q);
      if (v) r.emplace_back(s.column(m), v);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    s.reduce(r, q);
    if (r.empty()) return false;
    std::uint64_t inv = inv_mod(r.front().second, q);
    for (auto& e : r) e.second = mul_mod(e.second, inv, q);
    s.charge(r.size());
    s.pivot_row.emplace(r.front().first, s.rows_p.size());
    s.rows_p.push_back(std::move(r));
  }
  return true;
}

bool EchelonSpan::contains(const Polynomial& p) const {
  check_mode(p, mode_);
  if (p.is_zero()) return true;
  const Impl& s = *impl_;
  if (!mode_.is_prime()) {
    mpz_class lcm = 1;
    for (const auto& [m, c] : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.value().get_den_mpz_t());
    RowQ r;
    for (const auto& [m, c] : p.terms()) {
      auto it = s.col_of.find(m);
      if (it == s.col_of.end()) return false;
      r.emplace_back(it->second, c.value().get_num() * (lcm / c.value().get_den()));
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    make_primitive(r);
    s.reduce(r);
    return r.empty();
  }
  const std::uint64_t q = mode_.modulus;
  RowP r;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t v = c.field().is_prime() ? c.residue() : rational_mod(c.value(), q);
    if (!v) continue;
    auto it = s.col_of.find(m);
    if (it == s.col_of.end()) return false;
    r.emplace_back(it->second, v);
  }
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  s.reduce(r, q);
  return r.empty();
}

void EchelonSpan::register_columns(const std::vector<Monomial>& monomials) {
  for (const auto& m : monomials) impl_->column(m);
}

std::size_t EchelonSpan::rank() const { return impl_->pivot_row.size(); }
std::size_t EchelonSpan::columns() const { return impl_->col_mon.size(); }

std::vector<Polynomial> EchelonSpan::basis(std::uint32_t nvars) const {
  std::vector<Polynomial> out;
  const Impl& s = *impl_;
  if (!mode_.is_prime()) {
    for (const auto& r : s.rows_q) {
      Polynomial p(nvars, mode_);
      for (const auto& [col, v] : r) p.add_term(s.col_mon[col], Scalar(v, mode_));
      out.push_back(std::move(p));
    }
  } else {
    for (const auto& r : s.rows_p) {
      Polynomial p(nvars, mode_);
      for (const auto& [col, v] : r) {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        p.add_term(s.col_mon[col], Scalar(z, mode_));
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

static EchelonSpan eliminate(const std::vector<Polynomial>& polys, Field mode, Budget budget) {
  EchelonSpan span(mode, budget);
  if (!polys.empty()) {
    std::uint32_t n = polys.front().nvars();
    Field f = polys.front().field();
    for (const auto& p : polys) {
      if (p.nvars() != n) throw DimensionError("span of polynomials with different nvars");
      if (p.field() != f) throw DimensionError("span of polynomials over mixed fields");
    }
  }
  std::set<Monomial, GradedLexBefore> cols;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) cols.insert(m);
  }
  span.register_columns(std::vector<Monomial>(cols.begin(), cols.end()));
  for (const auto& p : polys) span.add(p);
  return span;
}

std::size_t span_rank(const std::vector<Polynomial>& polys, Field mode, Budget budget) {
  return eliminate(polys, mode, budget).rank();
}

std::vector<Polynomial> span_basis(const std::vector<Polynomial>& polys, Field mode, Budget budget) {
  std::uint32_t n = polys.empty() ? 0 : polys.front().nvars();
  return eliminate(polys, mode, budget).basis(n);
}

}  // namespace shiftpd
