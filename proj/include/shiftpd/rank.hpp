#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "shiftpd/polynomial.hpp"

namespace shiftpd {

// Desk-scale guards.
struct Budget {
  std::uint64_t max_terms = 1'000'000;        // terms in a generated polynomial
  std::uint64_t max_entries = 100'000'000;    // stored nonzeros of one elimination
};

// Incremental row echelon form over the span of polynomials.
//
// Rational mode keeps every row as a primitive integer vector and eliminates
// by cross-multiplication (no fractions); prime mode reduces mod p with
// monic pivots. Rows are sparse.
class EchelonSpan {
 public:
  explicit EchelonSpan(Field mode = Field::rational(), Budget budget = {});
  ~EchelonSpan();
  EchelonSpan(EchelonSpan&&) noexcept;
  EchelonSpan& operator=(EchelonSpan&&) noexcept;

  // Inserts p; returns true when it enlarged the span.
  bool add(const Polynomial& p);
  // True when p lies in the current span (the span is not modified).
  bool contains(const Polynomial& p) const;

  // Fixes the column order for the given monomials (others are appended on first sight).
  void register_columns(const std::vector<Monomial>& monomials);

  std::size_t rank() const;
  std::size_t generators() const { return generators_; }
  std::size_t columns() const;
  Field mode() const { return mode_; }
  // The pivot rows as polynomials (rational mode: primitive integer rows).
  std::vector<Polynomial> basis(std::uint32_t nvars) const;

 private:
  struct Impl;
  Field mode_;
  std::size_t generators_ = 0;
  std::unique_ptr<Impl> impl_;
};

// Rank of the coefficient matrix of `polys`. Columns are registered in
// graded-lex order before elimination.
std::size_t span_rank(const std::vector<Polynomial>& polys, Field mode = Field::rational(), Budget budget = {});

// Echelon basis of span(polys).
std::vector<Polynomial> span_basis(const std::vector<Polynomial>& polys, Field mode = Field::rational(),
                                   Budget budget = {});

}  // namespace shiftpd
