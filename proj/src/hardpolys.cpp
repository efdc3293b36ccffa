#include "shiftpd/hardpolys.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_set>

#include "shiftpd/decompose.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/primes.hpp"

namespace shiftpd {

namespace {

void guard_terms(const mpz_class& count, const Budget& budget, const std::string& what) {
  if (count > mpz_class(std::to_string(budget.max_terms)))
    throw BudgetExceeded(what + " would have " + count.get_str() + " terms (budget " +
                         std::to_string(budget.max_terms) + ")");
}

mpz_class pow_z(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// C(top, bottom) with a possibly negative top (0 then).
mpz_class binom_signed(std::int64_t top, std::int64_t bottom) {
  if (top < 0 || bottom < 0 || bottom > top) return 0;
  return binomial(static_cast<std::uint64_t>(top), static_cast<std::uint64_t>(bottom));
}

// h(z) = sum_j coeffs[j] z^j over F_q, evaluated at point.
std::uint32_t eval_mod(const std::vector<std::uint32_t>& coeffs, std::uint32_t point, std::uint32_t q) {
  std::uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * point + *it) % q;
  return static_cast<std::uint32_t>(acc);
}

// All coefficient vectors of length k over [0, q), first coordinate fastest.
std::vector<std::vector<std::uint32_t>> all_low_degree(std::uint32_t q, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> c(k, 0);
  while (true) {
    out.push_back(c);
    std::uint32_t i = 0;
    while (i < k && ++c[i] == q) c[i++] = 0;
    if (i == k) break;
  }
  return out;
}

void check_nw_args(std::uint32_t q, std::uint32_t d, std::uint32_t k) {
  if (!is_prime_u64(q)) throw DomainError("NW needs a prime q, got " + std::to_string(q));
  if (d == 0 || k == 0 || k > d) throw DomainError("NW needs 1 <= k <= d");
}

// The first `limit` monomials of degree deg in variables first..first+n-1, graded-lex.
void first_monomials(std::uint32_t first, std::uint32_t n, std::uint32_t deg, std::size_t limit,
                     std::vector<Monomial::Factor>& prefix, std::vector<Monomial>& out) {
  if (out.size() >= limit) return;
  if (deg == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (n == 0) return;
  if (n == 1) {
    prefix.emplace_back(first, deg);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t e = deg + 1; e-- > 0;) {
    if (e > 0) prefix.emplace_back(first, e);
    first_monomials(first + 1, n - 1, deg - e, limit, prefix, out);
    if (e > 0) prefix.pop_back();
    if (out.size() >= limit) return;
  }
}

}  // namespace

std::uint64_t Word::variable_count() const {
  std::uint64_t n = 0;
  for (int w : weights) n += std::uint64_t{1} << std::abs(w);
  return n;
}

bool is_h_unbiased(const std::vector<int>& weights, int h) {
  long long s = 0;
  for (int w : weights) {
    s += w;
    if (std::llabs(s) > h) return false;
  }
  return true;
}

WordBuildParams word_build_params(int h, std::uint32_t d, std::uint32_t k) {
  if (h < 1) throw DomainError("word construction needs h >= 1");
  if (k < 1 || k >= d) throw DomainError("word construction needs 1 <= k < d");
  if (2 * k > d) throw DomainError("word construction needs k <= d/2 (else ceil(h') > h)");
  WordBuildParams p;
  p.h = h;
  p.d = d;
  p.k = k;
  p.h_prime = mpq_class(static_cast<long>(h) * k, d - k);
  p.h_prime.canonicalize();
  mpz_class ceil_h;
  mpz_cdiv_q(ceil_h.get_mpz_t(), p.h_prime.get_num_mpz_t(), p.h_prime.get_den_mpz_t());
  p.k1 = static_cast<std::int64_t>(d - k) * ceil_h.get_si() - static_cast<std::int64_t>(k) * h;
  p.k2 = static_cast<std::int64_t>(d - k) - p.k1;
  if (p.k1 < 0 || p.k2 < 0) throw DomainError("word construction: k1 or k2 negative");
  return p;
}

Word construct_unbiased_word(int h, std::uint32_t d, std::uint32_t k) {
  WordBuildParams p = word_build_params(h, d, k);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), p.h_prime.get_num_mpz_t(), p.h_prime.get_den_mpz_t());
  const int floor_h = static_cast<int>(fl.get_si());
  const int ceil_h = (p.h_prime.get_den() == 1) ? floor_h : floor_h + 1;
  std::int64_t positives = k;
  std::int64_t big_neg = p.k2;    // -ceil(h')
  std::int64_t small_neg = p.k1;  // -floor(h')
  Word w;
  w.h = h;
  long long sum = 0;
  for (std::uint32_t i = 0; i < d; ++i) {
    int next;
    if (sum >= 0 && big_neg + small_neg > 0) {
      if (big_neg > 0) {
        next = -ceil_h;
        --big_neg;
      } else {
        next = -floor_h;
        --small_neg;
      }
    } else if (positives > 0) {
      next = h;
      --positives;
    } else {
      throw Error("word construction ran out of weights");  // excluded by the zero total
    }
    w.weights.push_back(next);
    sum += next;
  }
  return w;
}

WordPolynomial word_polynomial(const Word& w, const Budget& budget) {
  WordPolynomial out;
  out.word = w;
  std::uint64_t n = 0;
  std::vector<std::uint32_t> pos_sets;
  std::vector<std::uint32_t> neg_sets;
  std::uint32_t lp = 0;
  std::uint32_t ln = 0;
  for (std::uint32_t i = 0; i < w.weights.size(); ++i) {
    const std::uint32_t width = static_cast<std::uint32_t>(std::abs(w.weights[i]));
    if (width > 30) throw BudgetExceeded("word weight too large");
    out.set_offset.push_back(static_cast<std::uint32_t>(n));
    out.set_size.push_back(1u << width);
    out.negative.push_back(w.weights[i] < 0);
    n += std::uint64_t{1} << width;
    if (w.weights[i] < 0) {
      neg_sets.push_back(i);
      ln += width;
      out.n0 += 1u << width;
    } else {
      pos_sets.push_back(i);
      lp += width;
    }
  }
  if (n > budget.max_terms) throw BudgetExceeded("word polynomial has too many variables");
  out.n = static_cast<std::uint32_t>(n);
  const std::uint32_t L = std::max(lp, ln);
  if (L > 62) throw BudgetExceeded("word polynomial bit length too large");
  guard_terms(pow_z(2, L), budget, "word polynomial");

  auto decode = [&](const std::vector<std::uint32_t>& sets, std::uint64_t v, std::uint32_t len,
                    std::vector<std::uint32_t>& vars) {
    std::uint32_t used = 0;
    for (auto i : sets) {
      const std::uint32_t width = static_cast<std::uint32_t>(std::abs(w.weights[i]));
      used += width;
      const std::uint64_t bits = width == 0 ? 0 : (v >> (len - used)) & ((std::uint64_t{1} << width) - 1);
      vars.push_back(out.set_offset[i] + static_cast<std::uint32_t>(bits) + 1);
    }
  };
  out.poly = Polynomial(out.n);
  const Scalar one(1);
  std::vector<std::uint32_t> vars;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << L); ++b) {
    vars.clear();
    // The longer side reads all L bits, the shorter one their prefix.
    decode(pos_sets, b >> (L - lp), lp, vars);
    decode(neg_sets, b >> (L - ln), ln, vars);
    out.poly.add_term(Monomial::from_variables(vars), one);
  }
  return out;
}

std::vector<Monomial> negative_monomials(const WordPolynomial& wp) {
  std::vector<std::vector<std::uint32_t>> partial{{}};
  for (std::size_t i = 0; i < wp.negative.size(); ++i) {
    if (!wp.negative[i]) continue;
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& p : partial) {
      for (std::uint32_t b = 0; b < wp.set_size[i]; ++b) {
        auto q = p;
        q.push_back(wp.set_offset[i] + b + 1);
        next.push_back(std::move(q));
      }
    }
    partial = std::move(next);
  }
  std::vector<Monomial> out;
  for (const auto& p : partial) out.push_back(Monomial::from_variables(p));
  return out;
}

std::vector<std::uint32_t> positive_variables(const WordPolynomial& wp) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < wp.negative.size(); ++i) {
    if (wp.negative[i]) continue;
    for (std::uint32_t b = 0; b < wp.set_size[i]; ++b) out.push_back(wp.set_offset[i] + b + 1);
  }
  return out;
}

NwPolynomial nw_polynomial(std::uint32_t q, std::uint32_t d, std::uint32_t k, const Budget& budget) {
  check_nw_args(q, d, k);
  guard_terms(pow_z(q, k), budget, "NW polynomial");
  NwPolynomial out;
  out.q = q;
  out.d = d;
  out.k = k;
  out.distinct_points = d <= q;
  out.poly = Polynomial(q * d);
  const Scalar one(1);
  std::vector<std::uint32_t> vars(d);
  for (const auto& h : all_low_degree(q, k)) {
    for (std::uint32_t i = 1; i <= d; ++i) vars[i - 1] = nw_variable(q, i, eval_mod(h, i % q, q));
    out.poly.add_term(Monomial::from_variables(vars), one);
  }
  return out;
}

Polynomial imm_polynomial(std::uint32_t n, std::uint32_t d, const Budget& budget) {
  if (n == 0 || d == 0) throw DomainError("IMM needs n, d >= 1");
  guard_terms(pow_z(n, d - 1), budget, "IMM");
  Polynomial out(d * n * n);
  const Scalar one(1);
  // Path 1 = i_0, i_1, ..., i_{d-1}, i_d = 1; the inner indices count in base n.
  std::vector<std::uint32_t> idx(d + 1, 1);
  std::vector<std::uint32_t> vars(d);
  while (true) {
    for (std::uint32_t m = 1; m <= d; ++m) vars[m - 1] = imm_variable(n, m, idx[m - 1], idx[m]);
    out.add_term(Monomial::from_variables(vars), one);
    std::uint32_t j = 1;
    while (j < d && ++idx[j] > n) idx[j++] = 1;
    if (j >= d) break;
  }
  return out;
}

std::uint32_t p_sigma_n0(std::uint32_t n, std::uint32_t d, std::uint32_t k) {
  if (k == 0 || k >= d) throw DomainError("p_sigma needs 1 <= k < d");
  const mpz_class rhs = pow_z(2ull * (d - k), d - k) * pow_z(n, k);
  const mpz_class kk = pow_z(k, k);
  const auto fits = [&](std::uint64_t N) { return pow_z(N, d - k) * kk <= rhs; };
  // For k > d - k the answer grows like n^(k/(d-k)), so bracket it by doubling.
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > UINT32_MAX) throw DomainError("p_sigma_n0 exceeds 32 bits");
  }
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (fits(mid)) lo = mid;
    else hi = mid - 1;
  }
  return static_cast<std::uint32_t>(lo);
}

PSigma p_sigma(std::uint32_t n, std::uint32_t d, std::uint32_t delta, const Budget& budget) {
  PSigma out;
  out.n = n;
  out.d = d;
  out.delta = delta;
  out.k = static_cast<std::uint32_t>(low_depth_k(d, delta).k);
  if (out.k == 0 || out.k >= d) throw DomainError("p_sigma: low_depth_k gives k = " + std::to_string(out.k));
  out.n0 = p_sigma_n0(n, d, out.k);
  if (out.n0 < 1 || out.n0 >= n)
    throw DomainError("p_sigma: n0 = " + std::to_string(out.n0) + " not in [1, n)");
  out.n1 = n - out.n0;
  const mpz_class my = count_monomials(out.n1, out.k);
  const mpz_class mz = count_monomials(out.n0, d - out.k);
  if (my > mz) throw DomainError("p_sigma: |M_y| = " + my.get_str() + " exceeds |M_z| = " + mz.get_str());
  guard_terms(my, budget, "P_sigma");
  std::vector<Monomial> ys = enumerate_monomials(out.n1, out.k);
  std::vector<Monomial> zs;
  std::vector<Monomial::Factor> prefix;
  first_monomials(out.n1 + 1, out.n0, d - out.k, ys.size(), prefix, zs);
  out.poly = Polynomial(n);
  for (std::size_t i = 0; i < ys.size(); ++i) out.poly.add_term(ys[i] * zs[i], Scalar(1));
  out.kill_y.target_vars = out.n0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    out.kill_y.images.push_back(i <= out.n1 ? Polynomial(out.n0) : Polynomial::variable(i - out.n1, out.n0));
  }
  return out;
}

MonomialVandermonde monomial_and_vandermonde(std::uint32_t n, std::uint32_t k, std::uint32_t n0) {
  if (n == 0) throw DomainError("monomial_and_vandermonde needs n >= 1");
  if (n0 != k + 1) throw DomainError("monomial_and_vandermonde needs n0 = k + 1");
  MonomialVandermonde out;
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t i = 0; i < n; ++i) all[i] = i + 1;
  out.poly = Polynomial::monomial(Monomial::from_variables(all), Scalar(1), n);
  std::vector<std::vector<Scalar>> rows;
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::vector<Scalar> row;
    mpz_class p = 1;
    for (std::uint32_t j = 1; j <= n0; ++j) {
      row.emplace_back(p);
      p *= i;
    }
    rows.push_back(std::move(row));
  }
  out.map = LinearMap::from_matrix(n0, rows);
  return out;
}

Polynomial power_of_quadratic(std::uint32_t n, std::uint32_t e, const Budget& budget) {
  if (n == 0 || e == 0) throw DomainError("power_of_quadratic needs n, e >= 1");
  guard_terms(count_monomials(n, e), budget, "power of quadratic");
  Polynomial s(n);
  for (std::uint32_t i = 1; i <= n; ++i) s.add_term(Monomial::variable(i, 2), Scalar(1));
  return s.pow(e);
}

NwCountReport nw_count_identities(std::uint32_t q, std::uint32_t d, std::uint32_t k, std::uint32_t l,
                                  bool enumerate, const Budget& budget) {
  check_nw_args(q, d, k);
  NwCountReport r;
  r.q = q;
  r.d = d;
  r.k = k;
  r.l = l;
  const std::int64_t qd = static_cast<std::int64_t>(q) * d;
  r.t_h = binom_signed(qd + l - 1, qd - 1);
  r.sum_t_h = pow_z(q, k) * r.t_h;
  r.pair_bound = 0;
  for (std::uint32_t rr = 0; rr < k; ++rr) {
    mpz_class chi = pow_z(q, 2 * k - rr) * binom_signed(d - k, rr) *
                    binom_signed(qd + l - static_cast<std::int64_t>(d) + k + rr - 1, qd - 1);
    r.pair_bound += chi;
    r.chi.push_back(chi);
  }
  for (const auto& c : r.chi) {
    if (c > r.chi.front()) r.chi_decreasing_from_zero = false;
  }
  r.pair_bound_simple = mpz_class(k) * pow_z(q, 2 * k) * binom_signed(qd + l - static_cast<std::int64_t>(d) + k - 1, qd - 1);
  r.ie_lower = r.sum_t_h - r.pair_bound;
  r.ie_lower_simple = r.sum_t_h - r.pair_bound_simple;
  if (!enumerate) return r;

  guard_terms(pow_z(q, k) * count_monomials(static_cast<std::uint64_t>(qd), l), budget, "NW T enumeration");
  const auto shifts = enumerate_monomials(static_cast<std::uint32_t>(qd), l);
  std::vector<std::unordered_set<Monomial, MonomialHash>> th;
  std::unordered_set<Monomial, MonomialHash> all;
  for (const auto& h : all_low_degree(q, k)) {
    std::vector<std::uint32_t> vars;
    for (std::uint32_t i = k + 1; i <= d; ++i) vars.push_back(nw_variable(q, i, eval_mod(h, i % q, q)));
    const Monomial base = Monomial::from_variables(vars);
    std::unordered_set<Monomial, MonomialHash> set;
    for (const auto& m : shifts) set.insert(m * base);
    all.insert(set.begin(), set.end());
    th.push_back(std::move(set));
  }
  mpz_class sum = 0;
  mpz_class pairs = 0;
  for (std::size_t a = 0; a < th.size(); ++a) {
    sum += static_cast<unsigned long>(th[a].size());
    for (std::size_t b = 0; b < th.size(); ++b) {
      if (a == b) continue;
      unsigned long common = 0;
      for (const auto& m : th[a]) common += th[b].count(m);
      pairs += common;
    }
  }
  r.direct_sum_t_h = sum;
  r.direct_pairs = pairs;
  r.direct_t = mpz_class(static_cast<unsigned long>(all.size()));
  return r;
}

}  // namespace shiftpd
