#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftpd/polynomial.hpp"
#include "shiftpd/rank.hpp"

namespace shiftpd {

// ---- unbiased words and the word polynomial ----

struct Word {
  std::vector<int> weights;  // w_1..w_d
  int h = 0;

  std::uint32_t degree() const { return static_cast<std::uint32_t>(weights.size()); }
  // n = sum 2^|w_i|
  std::uint64_t variable_count() const;
};

// Every prefix sum has absolute value <= h.
bool is_h_unbiased(const std::vector<int>& weights, int h);

struct WordBuildParams {
  int h = 0;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  mpq_class h_prime;  // h k / (d - k)
  std::int64_t k1 = 0;  // copies of -floor(h')
  std::int64_t k2 = 0;  // copies of -ceil(h')
};

// Requires h >= 1 and 1 <= k <= d/2 (beyond d/2, ceil(h') > h).
WordBuildParams word_build_params(int h, std::uint32_t d, std::uint32_t k);

// k copies of h, k1 of -floor(h'), k2 of -ceil(h'), ordered greedily: a
// negative weight whenever the running sum is >= 0, else h. Larger negative
// weights are used first.
Word construct_unbiased_word(int h, std::uint32_t d, std::uint32_t k);

struct WordPolynomial {
  Polynomial poly;
  Word word;
  std::vector<std::uint32_t> set_offset;  // variables of set i are set_offset[i]+1 .. set_offset[i]+set_size[i]
  std::vector<std::uint32_t> set_size;
  std::vector<bool> negative;  // w_i < 0
  std::uint32_t n = 0;
  std::uint32_t n0 = 0;  // number of negative-set variables
};

// Variable b (read MSB-first as |w_i| bits) of set i is x_{set_offset[i] + b + 1}.
// P_w sums m+ m- over positive/negative set-multilinear monomials whose
// concatenated bit strings are prefix-related.
WordPolynomial word_polynomial(const Word& w, const Budget& budget = {});

// M_-(w): every set-multilinear monomial over the negative sets.
std::vector<Monomial> negative_monomials(const WordPolynomial& wp);
// Variables of the positive sets (the y block), increasing.
std::vector<std::uint32_t> positive_variables(const WordPolynomial& wp);

// ---- Nisan-Wigderson design polynomial ----

struct NwPolynomial {
  Polynomial poly;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  bool distinct_points = true;  // d <= q
};

// Variable x_{i,c} (i in [d], c in F_q) has index (i-1) q + c + 1.
inline std::uint32_t nw_variable(std::uint32_t q, std::uint32_t i, std::uint32_t c) { return (i - 1) * q + c + 1; }

// sum over h in F_q[z], deg h < k, of prod_i x_{i, h(i mod q)}. q prime,
// 1 <= k <= d. d > q is accepted; the evaluation points then repeat.
NwPolynomial nw_polynomial(std::uint32_t q, std::uint32_t d, std::uint32_t k, const Budget& budget = {});

// ---- iterated matrix multiplication ----

// Entry (a, b) of matrix m has index (m-1) n^2 + (a-1) n + b.
inline std::uint32_t imm_variable(std::uint32_t n, std::uint32_t m, std::uint32_t a, std::uint32_t b) {
  return (m - 1) * n * n + (a - 1) * n + b;
}
Polynomial imm_polynomial(std::uint32_t n, std::uint32_t d, const Budget& budget = {});

// ---- P_sigma ----

struct PSigma {
  Polynomial poly;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t delta = 0;
  std::uint32_t k = 0;
  std::uint32_t n0 = 0;   // |z|
  std::uint32_t n1 = 0;   // |y| = n - n0
  LinearMap kill_y;       // y -> 0, z_j -> z_j
};

// n0 = max N with N^(d-k) k^k <= (2(d-k))^(d-k) n^k, i.e.
// floor(2(d-k) (n/k)^(k/(d-k))). y = x_1..x_{n1}, z = the rest; sigma maps the
// i-th degree-k y-monomial to the i-th degree-(d-k) z-monomial (graded-lex).
PSigma p_sigma(std::uint32_t n, std::uint32_t d, std::uint32_t delta, const Budget& budget = {});
std::uint32_t p_sigma_n0(std::uint32_t n, std::uint32_t d, std::uint32_t k);

// ---- small fixed examples ----

struct MonomialVandermonde {
  Polynomial poly;  // x_1 ... x_n
  LinearMap map;    // x_i -> sum_j i^(j-1) z_j, j = 1..n0
};
// Requires n0 = k + 1.
MonomialVandermonde monomial_and_vandermonde(std::uint32_t n, std::uint32_t k, std::uint32_t n0);

// (x_1^2 + ... + x_n^2)^e.
Polynomial power_of_quadratic(std::uint32_t n, std::uint32_t e, const Budget& budget = {});

// ---- NW counting identities ----

struct NwCountReport {
  std::uint32_t q = 0, d = 0, k = 0, l = 0;
  mpz_class t_h;                 // C(qd+l-1, qd-1), one h
  mpz_class sum_t_h;             // q^k t_h
  std::vector<mpz_class> chi;    // chi(r), r = 0..k-1
  mpz_class pair_bound;          // sum_r chi(r)
  mpz_class pair_bound_simple;   // k q^(2k) C(qd+l-d+k-1, qd-1)
  mpz_class ie_lower;            // sum_t_h - pair_bound
  mpz_class ie_lower_simple;     // sum_t_h - pair_bound_simple
  bool chi_decreasing_from_zero = true;  // chi(0) >= chi(r) for all r
  // Filled by enumeration when requested.
  std::optional<mpz_class> direct_sum_t_h;
  std::optional<mpz_class> direct_pairs;  // sum over ordered h1 != h2 of |T_h1 & T_h2|
  std::optional<mpz_class> direct_t;      // |T|
};

// T_h = { m * prod_{i=k+1..d} x_{i,h(i)} : deg m = l }, T = union over h.
NwCountReport nw_count_identities(std::uint32_t q, std::uint32_t d, std::uint32_t k, std::uint32_t l,
                                  bool enumerate = false, const Budget& budget = {});

}  // namespace shiftpd
