#include "shiftpd/measures.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "shiftpd/errors.hpp"
#include "shiftpd/random.hpp"

namespace shiftpd {

namespace {

std::vector<Polynomial> derivatives_by(const Polynomial& p, const std::set<Monomial, GradedLexBefore>& alphas) {
  std::vector<Polynomial> out;
  out.reserve(alphas.size());
  for (const auto& a : alphas) {
    Polynomial d = partial_derivative(p, DerivativeMultiset(a));
    if (!d.is_zero()) out.push_back(std::move(d));
  }
  return out;
}

void check_budget(std::size_t rows, std::size_t terms_per_row, const Budget& b) {
  if (static_cast<double>(rows) * static_cast<double>(terms_per_row) > static_cast<double>(b.max_entries))
    throw BudgetExceeded("generator matrix would exceed " + std::to_string(b.max_entries) + " entries");
}

std::size_t max_terms(const std::vector<Polynomial>& ps) {
  std::size_t t = 0;
  for (const auto& p : ps) t = std::max(t, p.term_count());
  return t;
}

}  // namespace

MeasureResult span_dimension(const std::vector<Polynomial>& polys, const MeasureOptions& opts) {
  EchelonSpan span(opts.field, opts.budget);
  if (!polys.empty()) {
    for (const auto& p : polys) {
      if (p.nvars() != polys.front().nvars()) throw DimensionError("span of polynomials with different nvars");
      if (p.field() != polys.front().field()) throw DimensionError("span of polynomials over mixed fields");
    }
  }
  std::set<Monomial, GradedLexBefore> cols;
  for (const auto& p : polys) {
    for (const auto& [m, c] : p.terms()) cols.insert(m);
  }
  span.register_columns(std::vector<Monomial>(cols.begin(), cols.end()));
  for (const auto& p : polys) span.add(p);
  MeasureResult r;
  r.measure = "span";
  r.dimension = span.rank();
  r.generators = polys.size();
  r.ambient = static_cast<unsigned long>(cols.size());
  r.field = opts.field;
  return r;
}

std::vector<Polynomial> derivative_space(const Polynomial& p, std::uint32_t k) {
  std::set<Monomial, GradedLexBefore> alphas;
  for (const auto& [m, c] : p.terms()) {
    for (auto& a : sub_monomials(m, k)) alphas.insert(std::move(a));
  }
  return derivatives_by(p, alphas);
}

MeasureResult sp_measure(const Polynomial& p, std::uint32_t k, std::uint32_t l, const MeasureOptions& opts) {
  MeasureResult r;
  r.measure = "sp";
  r.k = k;
  r.l = l;
  r.field = opts.field;
  r.inhomogeneous = !is_homogeneous(p).homogeneous;
  auto deg = p.degree();
  if (deg && *deg >= k) r.ambient = count_monomials(p.nvars() == 0 ? 1 : p.nvars(), *deg - k + l);

  auto derivs = derivative_space(p, k);
  check_budget(derivs.size(), max_terms(derivs), opts.budget);
  auto basis = span_basis(derivs, opts.field, opts.budget);
  if (l == 0) {
    r.dimension = basis.size();
    r.generators = derivs.size();
    return r;
  }
  auto shifts = enumerate_monomials(p.nvars(), l);
  check_budget(basis.size() * shifts.size(), max_terms(basis), opts.budget);
  EchelonSpan span(opts.field, opts.budget);
  for (const auto& m : shifts) {
    for (const auto& b : basis) span.add(b.times_monomial(m));
  }
  r.dimension = span.rank();
  r.generators = span.generators();
  return r;
}

MeasureResult pd_measure(const Polynomial& p, std::uint32_t k, const MeasureOptions& opts) {
  auto r = sp_measure(p, k, 0, opts);
  r.measure = "pd";
  return r;
}

MeasureResult app_with_map(const Polynomial& p, std::uint32_t k, const LinearMap& L, const MeasureOptions& opts) {
  L.validate();
  MeasureResult r;
  r.measure = "app";
  r.k = k;
  r.n0 = L.target_vars;
  r.field = opts.field;
  r.lower_bound = true;
  r.inhomogeneous = !is_homogeneous(p).homogeneous;
  auto deg = p.degree();
  if (deg && *deg >= k && L.target_vars > 0) r.ambient = count_monomials(L.target_vars, *deg - k);

  auto derivs = derivative_space(p, k);
  auto basis = span_basis(derivs, Field::rational(), opts.budget);
  std::vector<Polynomial> projected;
  projected.reserve(basis.size());
  for (const auto& b : basis) projected.push_back(apply_linear_map(b, L));
  EchelonSpan span(opts.field, opts.budget);
  for (const auto& q : projected) span.add(q);
  r.dimension = span.rank();
  r.generators = derivs.size();
  return r;
}

LinearMap sample_linear_map(std::uint32_t n, std::uint32_t n0, std::uint64_t seed, std::uint64_t trial) {
  Rng rng(derive_seed(seed, 0x4150505fULL, trial));
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n0));
  for (auto& row : rows) {
    for (auto& e : row) e = Scalar(static_cast<long>(rng.uniform(-3, 3)));
  }
  return LinearMap::from_matrix(n0, rows);
}

MeasureResult app_sampled(const Polynomial& p, std::uint32_t k, std::uint32_t n0, std::uint32_t trials,
                          std::uint64_t seed, const MeasureOptions& opts) {
  if (trials == 0) throw DomainError("app_sampled needs trials >= 1");
  if (n0 == 0) throw DomainError("app_sampled needs n0 >= 1");
  MeasureResult best;
  for (std::uint32_t t = 0; t < trials; ++t) {
    auto r = app_with_map(p, k, sample_linear_map(p.nvars(), n0, seed, t), opts);
    if (t == 0 || r.dimension > best.dimension) best = r;
  }
  best.measure = "app-sampled";
  return best;
}

MeasureResult skewp_measure(const Polynomial& p, const std::vector<std::uint32_t>& yvars, std::uint32_t k,
                            const MeasureOptions& opts) {
  std::set<std::uint32_t> ys(yvars.begin(), yvars.end());
  for (auto y : ys) {
    if (y == 0 || y > p.nvars()) throw DimensionError("y variable x" + std::to_string(y) + " outside the ambient space");
  }
  auto y_part = [&](const Monomial& m) {
    std::vector<Monomial::Factor> f;
    for (const auto& fe : m.factors()) {
      if (ys.count(fe.first)) f.push_back(fe);
    }
    return Monomial(std::move(f));
  };
  std::set<Monomial, GradedLexBefore> alphas;
  for (const auto& [m, c] : p.terms()) {
    for (auto& a : sub_monomials(y_part(m), k)) alphas.insert(std::move(a));
  }
  std::vector<Polynomial> rows;
  for (const auto& d : derivatives_by(p, alphas)) {
    Polynomial z(p.nvars(), p.field());
    for (const auto& [m, c] : d.terms()) {
      if (y_part(m).is_one()) z.add_term(m, c);
    }
    if (!z.is_zero()) rows.push_back(std::move(z));
  }
  MeasureResult r = span_dimension(rows, opts);
  r.measure = "skewp";
  r.k = k;
  r.n0 = static_cast<std::uint32_t>(p.nvars() - ys.size());
  r.generators = alphas.size();
  r.inhomogeneous = !is_homogeneous(p).homogeneous;
  auto deg = p.degree();
  r.ambient = (deg && *deg >= k && r.n0 > 0) ? count_monomials(r.n0, *deg - k) : mpz_class(rows.empty() ? 0 : 1);
  return r;
}

}  // namespace shiftpd
