#include "shiftpd/decompose.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

#include "shiftpd/errors.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/upt.hpp"

namespace shiftpd {

bool pow2_power_at_least(std::uint64_t base, std::uint32_t e, std::uint64_t d) {
  if (base == 0) return d == 0;
  if (base == 1) return d <= 1;
  unsigned __int128 v = base;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (v >= d) return true;  // squaring only grows it
    v = v * v;
  }
  return v >= d;
}

Polynomial ProductDecomposition::recombine() const {
  Polynomial sum(nvars);
  for (const auto& s : summands) {
    Polynomial p = Polynomial::constant(Scalar(1), nvars);
    for (const auto& q : s.factors) p = p * q;
    sum += p;
  }
  return sum;
}

namespace {

class LowDepth {
 public:
  LowDepth(const Formula& f, std::uint64_t d) : f_(f), val_(eval_gates(f)), d_(d) {}

  // j: the current threshold is d^(1/2^j); delta: the assumed product depth.
  std::vector<Summand> gate(std::size_t id, std::uint32_t j, std::uint32_t delta) const {
    const Gate& g = f_.gate(id);
    if (g.op == GateOp::Input) return {Summand{{val_[id]}, {1}}};
    if (g.op == GateOp::Mul) return product(g.children, j, delta);
    std::vector<Summand> out;
    for (const auto& e : g.children) {
      const Gate& c = f_.gate(e.child);
      auto part = c.op == GateOp::Mul ? product(c.children, j, delta) : gate(e.child, j, delta);
      for (auto& s : part) {
        s.factors.front() = s.factors.front().scaled(e.coeff);
        out.push_back(std::move(s));
      }
    }
    return out;
  }

 private:
  struct Factor {
    std::uint32_t degree;
    std::size_t order;  // gate id for inputs, then merge counter
    Polynomial poly;
  };

  std::uint32_t degree_of(std::size_t id) const {
    auto dg = val_[id].degree();
    if (!dg) throw PreconditionError("gate " + std::to_string(id) + " computes 0 after normalization");
    return *dg;
  }

  std::vector<Summand> product(const std::vector<Edge>& kids, std::uint32_t j, std::uint32_t delta) const {
    if (delta <= 1) {
      Summand s;
      for (const auto& e : kids) {
        s.factors.push_back(val_[e.child].scaled(e.coeff));
        s.degrees.push_back(degree_of(e.child));
      }
      return {s};
    }
    // Case 1: a factor of degree >= sqrt of the current threshold; the lowest gate id wins.
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!pow2_power_at_least(degree_of(kids[i].child), j + 1, d_)) continue;
      if (!pick || kids[i].child < kids[*pick].child) pick = i;
    }
    if (pick) {
      const Edge& big = kids[*pick];
      std::optional<Polynomial> rest;
      std::uint32_t rest_degree = 0;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i == *pick) continue;
        Polynomial q = val_[kids[i].child].scaled(kids[i].coeff);
        rest = rest ? *rest * q : q;
        rest_degree += degree_of(kids[i].child);
      }
      auto sub = gate(big.child, j + 1, delta - 1);
      for (auto& s : sub) {
        s.factors.front() = s.factors.front().scaled(big.coeff);
        if (rest) {
          s.factors.push_back(*rest);
          s.degrees.push_back(rest_degree);
        }
      }
      return sub;
    }
    // Case 2: merge the two lowest-degree factors while both are below half the root.
    std::vector<Factor> fs;
    for (const auto& e : kids) fs.push_back({degree_of(e.child), e.child, val_[e.child].scaled(e.coeff)});
    std::size_t counter = f_.size();
    auto by_degree = [](const Factor& a, const Factor& b) {
      return std::tie(a.degree, a.order) < std::tie(b.degree, b.order);
    };
    std::sort(fs.begin(), fs.end(), by_degree);
    while (fs.size() >= 2 && !pow2_power_at_least(2ull * fs[0].degree, j + 1, d_) &&
           !pow2_power_at_least(2ull * fs[1].degree, j + 1, d_)) {
      Factor merged{fs[0].degree + fs[1].degree, counter++, fs[0].poly * fs[1].poly};
      fs.erase(fs.begin(), fs.begin() + 2);
      fs.insert(std::upper_bound(fs.begin(), fs.end(), merged, by_degree), std::move(merged));
    }
    Summand s;
    for (auto& fc : fs) {
      s.factors.push_back(std::move(fc.poly));
      s.degrees.push_back(fc.degree);
    }
    return {s};
  }

  const Formula& f_;
  std::vector<Polynomial> val_;
  std::uint64_t d_;
};

}  // namespace

ProductDecomposition low_depth_decompose(const Formula& f, std::optional<std::uint32_t> d_threshold) {
  if (!check_homogeneous(f)) throw PreconditionError("low_depth_decompose needs a homogeneous formula");
  RewriteOptions opts;
  opts.flatten = true;
  opts.collapse_unary = true;
  opts.prune_degrees = true;
  auto norm = rewrite_formula(f, opts);
  if (!norm) throw PreconditionError("low_depth_decompose: the formula computes 0");
  const Polynomial value = eval_formula(*norm);
  const std::uint32_t deg = *value.degree();
  const std::uint32_t d = d_threshold.value_or(deg);
  if (d == 0 || d > deg)
    throw PreconditionError("low_depth_decompose: threshold " + std::to_string(d) + " not in [1, " +
                            std::to_string(deg) + "]");
  ProductDecomposition out;
  out.nvars = f.nvars();
  out.source_size = f.size();
  out.normalized_size = norm->size();
  out.product_depth = product_depth(*norm);
  if (out.product_depth == 0) throw PreconditionError("low_depth_decompose needs product depth >= 1");
  out.summands = LowDepth(*norm, d).gate(norm->root(), 0, out.product_depth);
  return out;
}

ProductDecomposition upt_log_product_decompose(const Formula& f) {
  Formula bin = binarize(f);
  if (!is_upt(bin).upt) throw PreconditionError("upt_log_product_decompose needs a UPT formula");
  ProductDecomposition out;
  out.nvars = f.nvars();
  out.source_size = f.size();
  out.normalized_size = bin.size();
  out.product_depth = product_depth(bin);

  // Explicit work list of (formula, factors to prepend) so that long chains
  // of f[g <- 0] rewrites do not recurse.
  struct Job {
    Formula f;
    std::vector<Polynomial> prefix;
    std::vector<std::uint32_t> prefix_degrees;
  };
  std::vector<Job> work;
  work.push_back({bin, {}, {}});
  while (!work.empty()) {
    Job job = std::move(work.back());
    work.pop_back();
    const Formula& cur = job.f;
    LabeledTree lt = canonical_labeled(first_parse_tree(cur));
    const std::size_t d = lt.leaves();
    if (d == 1) {
      Polynomial p = eval_formula(cur);
      if (p.is_zero()) continue;
      Summand s{std::move(job.prefix), std::move(job.prefix_degrees)};
      s.factors.push_back(std::move(p));
      s.degrees.push_back(1);
      out.summands.push_back(std::move(s));
      continue;
    }
    const std::size_t depth = deg_seq_split_depth(unlabel(lt));
    const LabeledTree* v = &lt;
    for (std::size_t i = 0; i < depth; ++i) v = &v->kids[1];
    const std::size_t g = v->gate;

    RewriteOptions zero;
    zero.zero_gate = g;
    if (auto rest = rewrite_formula(cur, zero)) work.push_back({std::move(*rest), job.prefix, job.prefix_degrees});

    GateSplit split = split_at_gate(cur, g);
    if (split.A.is_zero()) continue;
    job.prefix.push_back(std::move(split.A));
    job.prefix_degrees.push_back(static_cast<std::uint32_t>(d - v->leaves()));
    work.push_back({std::move(split.Cg), std::move(job.prefix), std::move(job.prefix_degrees)});
  }
  return out;
}

LowDepthParams low_depth_k(std::uint32_t d, std::uint32_t delta) {
  if (d == 0 || delta == 0) throw DomainError("low_depth_k needs d >= 1 and delta >= 1");
  LowDepthParams p;
  p.d = d;
  p.delta = delta;
  // tau = max r with r^(2^(delta-1)) <= d.
  std::uint64_t lo = 1;
  std::uint64_t hi = d;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pow2_power_at_least(mid, delta - 1, static_cast<std::uint64_t>(d) + 1)) hi = mid - 1;
    else lo = mid;
  }
  p.tau = lo;
  p.degenerate = p.tau == 1;
  mpq_class alpha = 0;
  for (std::uint32_t nu = 0; nu < delta; ++nu) {
    mpq_class term = 1;
    if (p.tau > 1) {
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), p.tau, (1ul << nu) - 1);
      term = mpq_class(mpz_class(1), den);
    }
    if (nu % 2 == 0) alpha += term;
    else alpha -= term;
  }
  alpha.canonicalize();
  p.alpha = alpha;
  mpq_class kq = alpha * d / (1 + alpha);
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), kq.get_num_mpz_t(), kq.get_den_mpz_t());
  p.k = k.get_ui();
  return p;
}

ResidueFloorReport check_residue_floor(const ProductDecomposition& decomp, std::uint32_t k, const mpq_class& gamma) {
  ResidueFloorReport r;
  for (const auto& s : decomp.summands) {
    mpq_class v = residue(k, s.degrees).value;
    if (v < gamma) r.holds = false;
    if (!r.minimum || v < *r.minimum) r.minimum = v;
    r.residues.push_back(std::move(v));
  }
  return r;
}

LdsReport check_lds_conditions(const ProductDecomposition& decomp, std::uint32_t d, std::uint32_t delta) {
  if (delta == 0) throw DomainError("check_lds_conditions needs delta >= 1");
  LdsReport rep;
  for (const auto& s : decomp.summands) {
    LdsVerdict v;
    v.linear_factors = static_cast<std::size_t>(std::count(s.degrees.begin(), s.degrees.end(), 1u));
    v.many_linear = pow2_power_at_least(v.linear_factors, delta - 1, d);
    for (std::uint32_t dl = 2; dl <= delta && !v.delta; ++dl) {
      // D = d^(2^(1-dl)); deg in [D/2, D] iff (2 deg)^E >= d and deg^E <= d, E = 2^(dl-1).
      std::uint64_t near = 0;
      for (auto dg : s.degrees) {
        if (pow2_power_at_least(2ull * dg, dl - 1, d) && !pow2_power_at_least(dg, dl - 1, std::uint64_t{d} + 1)) ++near;
      }
      if (pow2_power_at_least(near + 1, dl - 1, d)) v.delta = dl;
    }
    if (!v.holds()) rep.holds = false;
    rep.summands.push_back(v);
  }
  return rep;
}

}  // namespace shiftpd
