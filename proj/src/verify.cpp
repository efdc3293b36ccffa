#include "shiftpd/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "shiftpd/binary_tree.hpp"
#include "shiftpd/bounds.hpp"
#include "shiftpd/decompose.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/formula.hpp"
#include "shiftpd/formula_gen.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/polynomial.hpp"
#include "shiftpd/random.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/upt.hpp"

namespace shiftpd {

namespace {

// Random streams, one per check, so adding cases to one check never shifts another.
enum Stream : std::uint64_t {
  kContainment = 4,
  kProduct = 5,
  kSubadd = 6,
  kUptDetect = 10,
  kUptK = 12,
  kLowDepth = 13,
  kUptDecomp = 14,
  kRank = 17,
};

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

std::string list(const std::vector<std::uint32_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string where_random(const VerifyOptions& o, Stream stream, std::uint64_t index) {
  return cat("seed=", o.seed, " stream=", static_cast<std::uint64_t>(stream), " index=", index);
}

bool medium(const VerifyOptions& o) { return o.scale == Scale::Medium; }

MeasureOptions measure_opts(const VerifyOptions& o) {
  MeasureOptions m;
  m.budget = o.budget;
  return m;
}

mpz_class zpow(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

CheckReport timed(const std::string& name, const std::function<void(CheckReport&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.name = name;
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Library errors inside one case are failures of that case, not of the run.
void guarded(CheckReport& r, const std::string& where, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    r.fail(where, cat("error: ", e.what()));
  }
}

std::vector<Polynomial> random_factors(Rng& rng, std::uint32_t n, const std::vector<std::uint32_t>& degrees) {
  std::vector<Polynomial> qs;
  for (auto deg : degrees) qs.push_back(random_homogeneous(rng, n, deg, static_cast<std::uint32_t>(rng.uniform(1, 3))));
  return qs;
}

Scalar nonzero_scalar(Rng& rng) {
  long c = rng.uniform(1, 3);
  return Scalar(rng.coin() ? c : -c);
}

bool isomorphic(const BinaryTree& a, const BinaryTree& b) {
  if (a.leaves() != b.leaves()) return false;
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf();
  const BinaryTree al = a.left(), ar = a.right(), bl = b.left(), br = b.right();
  return (isomorphic(al, bl) && isomorphic(ar, br)) || (isomorphic(al, br) && isomorphic(ar, bl));
}

// Every canonical tree with up to `max_leaves` leaves, built directly from the
// swap rule: left leaves <= right leaves, and enc(left) <= enc(right) on a tie.
std::vector<std::vector<BinaryTree>> canonical_trees_upto(std::size_t max_leaves) {
  std::vector<std::vector<BinaryTree>> out(max_leaves + 1);
  std::vector<std::vector<std::string>> enc(max_leaves + 1);
  out[1] = {BinaryTree::leaf()};
  enc[1] = {"L"};
  for (std::size_t n = 2; n <= max_leaves; ++n) {
    for (std::size_t a = 1; 2 * a <= n; ++a) {
      for (std::size_t i = 0; i < out[a].size(); ++i) {
        for (std::size_t j = 0; j < out[n - a].size(); ++j) {
          if (2 * a == n && enc[a][i] > enc[n - a][j]) continue;
          out[n].push_back(BinaryTree::join(out[a][i], out[n - a][j]));
          enc[n].push_back("(" + enc[a][i] + "," + enc[n - a][j] + ")");
        }
      }
    }
  }
  return out;
}

// Right spine whose left legs are random subtrees of 1..3 leaves.
BinaryTree caterpillar_style(Rng& rng, std::size_t leaves) {
  std::vector<std::size_t> legs;
  std::size_t left = leaves;
  while (left > 1) {
    auto leg = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(3, left - 1))));
    legs.push_back(leg);
    left -= leg;
  }
  BinaryTree t = BinaryTree::leaf();
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) t = BinaryTree::join(random_binary_tree(rng, *it), t);
  return t;
}

Monomial remap(const Monomial& m, const std::vector<std::uint32_t>& vars) {
  std::vector<Monomial::Factor> f;
  for (const auto& [v, e] : m.factors()) f.emplace_back(vars[v - 1], e);
  return Monomial(std::move(f));
}

}  // namespace

Scale parse_scale(const std::string& s) {
  if (s == "small") return Scale::Small;
  if (s == "medium") return Scale::Medium;
  throw ParseError("unknown scale '" + s + "' (small, medium)");
}

void CheckReport::merge(const CheckReport& o) {
  cases += o.cases;
  failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  seconds += o.seconds;
}

CheckReport check_residue_oracle(const VerifyOptions& o) {
  return timed("residue-oracle", [&](CheckReport& r) {
    const std::uint32_t max_t = medium(o) ? 5 : 4;
    const std::uint32_t max_deg = medium(o) ? 7 : 6;
    for (std::uint32_t t = 1; t <= max_t; ++t) {
      std::vector<std::uint32_t> degs(t, 1);
      while (true) {
        const std::uint32_t d = std::accumulate(degs.begin(), degs.end(), 0u);
        for (std::uint32_t k = 0; k < d; ++k) {
          ++r.cases;
          const std::string where = cat("k=", k, " degrees=", list(degs));
          guarded(r, where, [&] {
            const auto fast = residue(k, degs);
            const auto slow = residue_bruteforce(k, degs, d);
            if (fast.value != slow.value)
              r.fail(where, cat("residue ", fast.value.get_str(), " != brute force ", slow.value.get_str()));
            if (2 * fast.value > static_cast<unsigned long>(k))
              r.fail(where, cat("residue ", fast.value.get_str(), " exceeds k/2"));
          });
        }
        std::size_t i = 0;
        while (i < t && degs[i] == max_deg) degs[i++] = 1;
        if (i == t) break;
        ++degs[i];
      }
    }
  });
}

CheckReport check_binomial_bounds(const VerifyOptions& o) {
  return timed("binomial-bounds", [&](CheckReport& r) {
    const unsigned long A = medium(o) ? 60 : 40;
    const unsigned long D = medium(o) ? 14 : 10;
    std::vector<std::vector<mpz_class>> M(A + 1, std::vector<mpz_class>(2 * A + 1));
    for (unsigned long a = 1; a <= A; ++a)
      for (unsigned long b = 0; b <= 2 * A; ++b) M[a][b] = count_monomials(a, b);
    for (unsigned long a = 1; a <= A; ++a) {
      for (unsigned long b = 1; b <= a; ++b) {
        // (a/b)^b <= M(a,b) <= (6a/b)^b
        ++r.cases;
        const mpz_class scaled = M[a][b] * zpow(b, b);
        if (zpow(a, b) > scaled || scaled > zpow(6 * a, b))
          r.fail(cat("item1 a=", a, " b=", b), cat("M(a,b) = ", M[a][b].get_str(), " outside [(a/b)^b, (6a/b)^b]"));
        for (unsigned long c = 1; c <= b; ++c) {
          // (a/2b)^c <= M(a,b+c)/M(a,b) <= (2a/b)^c
          ++r.cases;
          const bool low = zpow(a, c) * M[a][b] <= zpow(2 * b, c) * M[a][b + c];
          const bool high = M[a][b + c] * zpow(b, c) <= zpow(2 * a, c) * M[a][b];
          if (!low || !high)
            r.fail(cat("item2 a=", a, " b=", b, " c=", c),
                   cat("M(a,b+c)/M(a,b) = ", M[a][b + c].get_str(), "/", M[a][b].get_str(),
                       low ? " above (2a/b)^c" : " below (a/2b)^c"));
        }
      }
    }
    // M(c,d)/M(b,d) >= (c/b)^d for c <= b
    for (unsigned long b = 1; b <= A; ++b) {
      for (unsigned long c = 1; c <= b; ++c) {
        for (unsigned long d = 1; d <= D; ++d) {
          ++r.cases;
          if (M[c][d] * zpow(b, d) < zpow(c, d) * M[b][d])
            r.fail(cat("item3 b=", b, " c=", c, " d=", d), "M(c,d)/M(b,d) below (c/b)^d");
        }
      }
    }
  });
}

CheckReport check_containment(const VerifyOptions& o) {
  return timed("containment", [&](CheckReport& r) {
    const std::uint64_t instances = medium(o) ? 400 : 200;
    for (std::uint64_t i = 0; i < instances; ++i) {
      Rng rng(derive_seed(o.seed, kContainment, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto t = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto d = static_cast<std::uint32_t>(rng.uniform(t, 6));
      const auto degs = random_composition(rng, d, t);
      const auto qs = random_factors(rng, n, degs);
      for (std::uint32_t k = 0; k < d; ++k) {
        ++r.cases;
        const std::string where = cat(where_random(o, kContainment, i), " n=", n, " degrees=", list(degs), " k=", k);
        guarded(r, where, [&] {
          const auto res = derivative_space_containment(qs, k);
          if (!res.holds)
            r.fail(where, cat("partial ", res.witness ? format_polynomial(*res.witness) : "?",
                              " outside the span of ", res.generators, " generators"));
        });
      }
    }
    r.notes.push_back(cat(instances, " random instances, every k < d"));
  });
}

CheckReport check_product_bounds(const VerifyOptions& o) {
  return timed("product-bounds", [&](CheckReport& r) {
    const std::uint64_t instances = medium(o) ? 240 : 120;
    const auto opts = measure_opts(o);
    for (std::uint64_t i = 0; i < instances; ++i) {
      Rng rng(derive_seed(o.seed, kProduct, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto t = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto d = static_cast<std::uint32_t>(rng.uniform(t, 6));
      const auto degs = random_composition(rng, d, t);
      const auto qs = random_factors(rng, n, degs);
      Polynomial p = qs[0];
      for (std::size_t j = 1; j < qs.size(); ++j) p = p * qs[j];
      const std::string base = cat(where_random(o, kProduct, i), " n=", n, " degrees=", list(degs));
      for (std::uint32_t k = 0; k < d; ++k) {
        for (std::uint32_t l = 0; l <= 2; ++l) {
          ++r.cases;
          const std::string where = cat(base, " k=", k, " l=", l);
          guarded(r, where, [&] {
            const auto dim = sp_measure(p, k, l, opts).dimension;
            const auto bound = product_sp_bound(n, degs, k, l);
            if (mpz_class(dim) > bound) r.fail(where, cat("SP = ", dim, " exceeds bound ", bound.get_str()));
          });
        }
        for (std::uint32_t n0 = 1; n0 <= 3; ++n0) {
          ++r.cases;
          const std::string where = cat(base, " k=", k, " n0=", n0);
          guarded(r, where, [&] {
            const auto L = sample_linear_map(n, n0, derive_seed(o.seed, kProduct, i), n0);
            const auto dim = app_with_map(p, k, L, opts).dimension;
            const auto bound = product_app_bound(n, degs, k, n0);
            if (mpz_class(dim) > bound) r.fail(where, cat("APP = ", dim, " exceeds bound ", bound.get_str()));
          });
        }
      }
    }
  });
}

CheckReport check_subadditivity(const VerifyOptions& o) {
  return timed("subadditivity", [&](CheckReport& r) {
    const std::uint64_t triples = medium(o) ? 200 : 100;
    const auto opts = measure_opts(o);
    for (std::uint64_t i = 0; i < triples; ++i) {
      Rng rng(derive_seed(o.seed, kSubadd, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto d = static_cast<std::uint32_t>(rng.uniform(1, 5));
      const Polynomial p = random_homogeneous(rng, n, d, static_cast<std::uint32_t>(rng.uniform(1, 4)));
      const Polynomial q = random_homogeneous(rng, n, d, static_cast<std::uint32_t>(rng.uniform(1, 4)));
      const Scalar c1 = nonzero_scalar(rng);
      const Scalar c2 = nonzero_scalar(rng);
      const auto k = static_cast<std::uint32_t>(rng.uniform(0, d));
      const auto l = static_cast<std::uint32_t>(rng.uniform(0, 2));
      const auto n0 = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const Polynomial s = p.scaled(c1) + q.scaled(c2);
      const std::string where = cat(where_random(o, kSubadd, i), " n=", n, " d=", d, " k=", k, " l=", l, " n0=", n0);
      r.cases += 2;
      guarded(r, where, [&] {
        const auto sp = [&](const Polynomial& f) { return sp_measure(f, k, l, opts).dimension; };
        if (sp(s) > sp(p) + sp(q)) r.fail(where, cat("SP(c1 P + c2 Q) = ", sp(s), " > ", sp(p), " + ", sp(q)));
        const auto L = sample_linear_map(n, n0, derive_seed(o.seed, kSubadd, i), 0);
        const auto app = [&](const Polynomial& f) { return app_with_map(f, k, L, opts).dimension; };
        if (app(s) > app(p) + app(q))
          r.fail(where, cat("APP_L(c1 P + c2 Q) = ", app(s), " > ", app(p), " + ", app(q)));
      });
    }
  });
}

CheckReport check_canonical_trees(const VerifyOptions& o) {
  return timed("canonical-trees", [&](CheckReport& r) {
    const std::size_t max_leaves = medium(o) ? 10 : 9;
    std::size_t total = 0;
    for (std::size_t leaves = 1; leaves <= max_leaves; ++leaves) {
      const auto trees = all_binary_trees(leaves);
      total += trees.size();
      std::vector<std::string> can(trees.size());
      for (std::size_t i = 0; i < trees.size(); ++i) {
        ++r.cases;
        const BinaryTree c = canonical_tree(trees[i]);
        const std::string where = "tree " + trees[i].encoding();
        if (!c.is_right_heavy()) r.fail(where, "can() not right-heavy: " + c.encoding());
        if (!(canonical_tree(c) == c)) r.fail(where, "can() not idempotent");
        if (!isomorphic(c, trees[i])) r.fail(where, "can() not isomorphic to its input");
        can[i] = c.encoding();
      }
      for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = i + 1; j < trees.size(); ++j) {
          ++r.cases;
          const bool same = can[i] == can[j];
          if (same != isomorphic(trees[i], trees[j]))
            r.fail(cat("trees ", trees[i].encoding(), " ", trees[j].encoding()),
                   same ? "equal can() but not isomorphic" : "isomorphic but different can()");
        }
      }
    }
    r.notes.push_back(cat(total, " trees with <= ", max_leaves, " leaves, all same-size pairs"));
  });
}

CheckReport check_upt_detection(const VerifyOptions& o) {
  return timed("upt-detection", [&](CheckReport& r) {
    const std::uint64_t formulas = medium(o) ? 600 : 300;
    std::uint64_t upt = 0, truncated = 0;
    for (std::uint64_t i = 0; i < formulas; ++i) {
      Rng rng(derive_seed(o.seed, kUptDetect, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const auto d = static_cast<std::uint32_t>(rng.uniform(3, 6));
      const std::string where = cat(where_random(o, kUptDetect, i), " n=", n, " d=", d);
      guarded(r, where, [&] {
        const auto kind = rng.uniform(0, 2);
        const Formula f = kind == 0   ? random_upt_formula(rng, n, random_binary_tree(rng, d), 25)
                          : kind == 1 ? random_two_shape_formula(rng, n, d, 25)
                                      : random_homogeneous_formula(rng, n, d, 25);
        const auto pts = parse_trees(f, 100000);
        if (pts.truncated) {
          ++truncated;
          return;
        }
        std::set<std::string> classes;
        for (const auto& t : pts.trees) classes.insert(canonical_tree(t).encoding());
        const bool oracle = classes.size() == 1;
        ++r.cases;
        const auto got = is_upt(f);
        if (got.upt != oracle) {
          r.fail(where, cat("is_upt = ", got.upt, " but ", classes.size(), " parse-tree classes"));
          return;
        }
        if (oracle) {
          ++upt;
          if (!got.tree || got.tree->encoding() != *classes.begin())
            r.fail(where, "is_upt tree differs from the canonical parse tree");
        }
      });
    }
    r.notes.push_back(cat(upt, " UPT and ", r.cases - upt, " non-UPT formulas"));
    if (truncated) r.notes.push_back(cat(truncated, " formulas skipped: parse-tree enumeration truncated"));
  });
}

CheckReport check_degseq(const VerifyOptions& o) {
  return timed("degseq", [&](CheckReport& r) {
    const std::size_t max_leaves = medium(o) ? 14 : 12;
    const auto trees = canonical_trees_upto(max_leaves);
    for (std::size_t leaves = 1; leaves <= max_leaves; ++leaves) {
      for (const auto& t : trees[leaves]) {
        ++r.cases;
        const std::string where = "tree " + t.encoding();
        if (!(canonical_tree(t) == t)) {
          r.fail(where, "generated tree is not canonical");
          continue;
        }
        const auto ds = deg_seq(t);
        const auto& e = ds.suffixes;
        const std::size_t len = ds.degrees.size();
        if (len == 0 || e.size() != len + 1 || e[0] != leaves) {
          r.fail(where, "malformed degree sequence " + list(ds.degrees));
          continue;
        }
        for (std::size_t i = 1; i < len; ++i) {
          if (!(3 * e[i] > e[i - 1] && 3 * e[i] <= 2 * e[i - 1]))
            r.fail(where, cat("e_", i, " = ", e[i], " outside (e_", i - 1, "/3, 2e_", i - 1, "/3], e_", i - 1, " = ",
                              e[i - 1]));
        }
        if (ds.degrees.back() != 1 || e.back() != 0) r.fail(where, "d_t != 1 or e_t != 0: " + list(ds.degrees));
        // log3 d + 1 <= t <= log_{3/2} d + 1
        const mpz_class p3 = zpow(3, len - 1);
        if (p3 < leaves || p3 > mpz_class(leaves) * zpow(2, len - 1))
          r.fail(where, cat("t = ", len, " outside [log3 d + 1, log_{3/2} d + 1]"));
      }
    }
  });
}

CheckReport check_uptk(const VerifyOptions& o) {
  return timed("uptk", [&](CheckReport& r) {
    std::uint64_t below_d30 = 0;
    // Recomputes J, alpha and k from the degree sequence and the digits.
    auto check_trace = [&](const std::string& where, const BinaryTree& t) -> std::optional<UptKTrace> {
      const auto ds = deg_seq(t);
      const auto tr = upt_k(ds);
      const std::uint32_t d = ds.total();
      if (tr.d != d || tr.a.size() != tr.m || tr.J.size() != 3 * tr.m) {
        r.fail(where, "trace has inconsistent lengths");
        return std::nullopt;
      }
      if (zpow(3, 3 * tr.m + 1) > d || (d >= 3 && zpow(3, 3 * tr.m + 4) <= d))
        r.fail(where, cat("m = ", tr.m, " is not the largest m with 3^(3m+1) <= d"));
      mpz_class p3 = 1;
      for (std::uint32_t i = 1; i <= 3 * tr.m; ++i) {
        p3 *= 3;
        std::size_t j = 0;
        while (j < ds.suffixes.size() && ds.suffixes[j] > p3) ++j;
        if (tr.J[i - 1] != j) r.fail(where, cat("J(", i, ") = ", tr.J[i - 1], ", expected ", j));
      }
      mpq_class alpha = 0;
      mpz_class p27 = 1;
      for (std::uint32_t i = 0; i < tr.m; ++i) {
        p27 *= 27;
        if (tr.a[i] != 0 && tr.a[i] != 1) r.fail(where, "digit outside {0, 1}");
        alpha += mpq_class(tr.a[i], 1) / p27;
      }
      if (alpha != tr.alpha) r.fail(where, "alpha " + tr.alpha.get_str() + " != sum a_i / 27^i");
      if (tr.m >= 1 && (tr.a[0] != 1 || tr.b0[0] != 0)) r.fail(where, "a_1 != 1 or b_0 != 0 at i = 1");
      const mpq_class ad = alpha * d;
      mpz_class k;
      mpz_fdiv_q(k.get_mpz_t(), ad.get_num_mpz_t(), ad.get_den_mpz_t());
      if (k != tr.k) r.fail(where, cat("k = ", tr.k, ", floor(alpha d) = ", k.get_str()));
      return tr;
    };

    // d = 81: m = 1, a_1 = 1, alpha = 1/27, k = 3 for every tree.
    std::vector<std::pair<std::string, BinaryTree>> fixed = {{"caterpillar(81)", caterpillar(81)},
                                                              {"balanced(81)", canonical_tree(balanced_tree(81))}};
    for (std::uint64_t i = 0; i < 40; ++i) {
      Rng rng(derive_seed(o.seed, kUptK, i));
      fixed.emplace_back(cat("caterpillar-style(81) ", where_random(o, kUptK, i)),
                         canonical_tree(caterpillar_style(rng, 81)));
    }
    for (const auto& [where, t] : fixed) {
      ++r.cases;
      guarded(r, where, [&] {
        const auto tr = check_trace(where, t);
        if (tr && (tr->k != 3 || tr->a.empty() || tr->a[0] != 1))
          r.fail(where, cat("k = ", tr->k, ", expected 3 with a_1 = 1"));
      });
    }

    const std::uint64_t trees = medium(o) ? 500 : 200;
    for (std::uint64_t i = 0; i < trees; ++i) {
      Rng rng(derive_seed(o.seed, kUptK, 1000 + i));
      const auto d = static_cast<std::uint32_t>(rng.uniform(81, 3000));
      const auto shape = rng.uniform(0, 2);
      const std::string where = cat(where_random(o, kUptK, 1000 + i), " d=", d, " shape=", shape);
      ++r.cases;
      guarded(r, where, [&] {
        const BinaryTree t = canonical_tree(shape == 0   ? random_binary_tree(rng, d)
                                            : shape == 1 ? caterpillar_style(rng, d)
                                                         : balanced_tree(d));
        const auto tr = check_trace(where, t);
        if (!tr || tr->m == 0) return;
        if (2 * tr->k > d) r.fail(where, cat("k = ", tr->k, " > d/2"));
        // k >= d/27 - 1 always; that is >= d/30 once d >= 270 (and at d = 81).
        if (27 * (tr->k + 1) < d) r.fail(where, cat("k = ", tr->k, " < d/27 - 1"));
        if (30 * tr->k < d) {
          if (d >= 270) r.fail(where, cat("k = ", tr->k, " < d/30"));
          else ++below_d30;
        }
      });
    }
    r.notes.push_back(cat(below_d30, " random trees with 81 < d < 270 have k < d/30 (k >= d/27 - 1 holds)"));
  });
}

CheckReport check_decompose_lowdepth(const VerifyOptions& o) {
  return timed("decompose-lowdepth", [&](CheckReport& r) {
    const std::uint64_t formulas = medium(o) ? 400 : 200;
    std::uint64_t zero = 0, summands = 0;
    // Zero polynomials are redrawn, so `formulas` counts nonzero instances.
    for (std::uint64_t i = 0; r.cases < formulas && i < 4 * formulas; ++i) {
      Rng rng(derive_seed(o.seed, kLowDepth, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
      const auto d = static_cast<std::uint32_t>(rng.uniform(2, 8));
      const bool layered = rng.coin();
      const auto delta = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const std::string where = cat(where_random(o, kLowDepth, i), " n=", n, " d=", d,
                                    layered ? cat(" layered delta=", delta) : std::string(" general"));
      guarded(r, where, [&] {
        const Formula f = layered ? random_low_depth_formula(rng, n, d, delta, 30)
                                  : random_homogeneous_formula(rng, n, d, 30);
        const Polynomial p = eval_formula(f);
        if (p.is_zero()) {
          ++zero;
          return;
        }
        ++r.cases;
        const auto pd = low_depth_decompose(f);
        summands += pd.s();
        if (!(pd.recombine() == p)) r.fail(where, "sum of products differs from the formula");
        if (pd.s() > f.size()) r.fail(where, cat("s = ", pd.s(), " exceeds size ", f.size()));
        const auto lds = check_lds_conditions(pd, d, pd.product_depth);
        for (std::size_t j = 0; j < lds.summands.size(); ++j) {
          if (!lds.summands[j].holds())
            r.fail(where, cat("summand ", j, " degrees ", list(pd.summands[j].degrees),
                              " meets neither low-depth condition (product depth ", pd.product_depth, ")"));
        }
      });
    }
    r.notes.push_back(cat(summands, " summands checked"));
    if (zero) r.notes.push_back(cat(zero, " formulas skipped: zero polynomial"));
  });
}

CheckReport check_decompose_upt(const VerifyOptions& o) {
  return timed("decompose-upt", [&](CheckReport& r) {
    const std::uint64_t formulas = medium(o) ? 400 : 200;
    std::uint64_t zero = 0;
    for (std::uint64_t i = 0; r.cases < formulas && i < 4 * formulas; ++i) {
      Rng rng(derive_seed(o.seed, kUptDecomp, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
      const auto d = static_cast<std::uint32_t>(rng.uniform(1, 8));
      const std::string where = cat(where_random(o, kUptDecomp, i), " n=", n, " d=", d);
      guarded(r, where, [&] {
        const Formula f = random_upt_formula(rng, n, random_binary_tree(rng, d), 30);
        const Polynomial p = eval_formula(f);
        if (p.is_zero()) {
          ++zero;
          return;
        }
        ++r.cases;
        const auto upt = is_upt(f);
        if (!upt.upt || !upt.tree) {
          r.fail(where, "generated formula is not UPT");
          return;
        }
        const auto expected = deg_seq(*upt.tree).degrees;
        const auto pd = upt_log_product_decompose(f);
        if (!(pd.recombine() == p)) r.fail(where, "sum of products differs from the formula");
        if (pd.s() > f.size()) r.fail(where, cat("s = ", pd.s(), " exceeds size ", f.size()));
        for (std::size_t j = 0; j < pd.summands.size(); ++j) {
          if (pd.summands[j].degrees != expected)
            r.fail(where, cat("summand ", j, " degrees ", list(pd.summands[j].degrees), ", deg_seq ", list(expected)));
        }
      });
    }
    if (zero) r.notes.push_back(cat(zero, " formulas skipped: zero polynomial"));
  });
}

CheckReport check_words(const VerifyOptions& o) {
  return timed("words", [&](CheckReport& r) {
    const std::uint32_t max_d = medium(o) ? 10 : 8;
    for (int h = 1; h <= 4; ++h) {
      for (std::uint32_t d = 2; d <= max_d; ++d) {
        for (std::uint32_t k = 1; 2 * k <= d; ++k) {
          ++r.cases;
          const std::string where = cat("h=", h, " d=", d, " k=", k);
          guarded(r, where, [&] {
            const Word w = construct_unbiased_word(h, d, k);
            long sum = 0, negative = 0;
            for (int x : w.weights) {
              sum += x;
              if (x < 0) negative -= x;
            }
            if (w.degree() != d || !is_h_unbiased(w.weights, h) || sum != 0)
              r.fail(where, "word is not an h-unbiased length-d word with sum 0");
            if (negative != static_cast<long>(h) * k) r.fail(where, cat("negative weights sum to ", negative));
            // P_w has 2^(hk) terms; build it while that stays small.
            if (static_cast<long>(h) * k > 16) return;
            const auto wp = word_polynomial(w, o.budget);
            const auto mminus = negative_monomials(wp);
            if (mpz_class(mminus.size()) != zpow(2, static_cast<unsigned long>(h) * k))
              r.fail(where, cat("|M_-(w)| = ", mminus.size(), ", expected 2^", h * k));
          });
        }
      }
    }

    // Shifts by y-monomials of the order-k partials along positive monomials:
    // a subset of the SP generators whose rank alone meets M(n - n0, l) 2^(hk).
    const int h = 2;
    const std::uint32_t d = 4, k = 2;
    const std::string where = "rank instance h=2 d=4 k=2";
    ++r.cases;
    guarded(r, where, [&] {
      const auto wp = word_polynomial(construct_unbiased_word(h, d, k), o.budget);
      const std::uint32_t l = wp.n * d / wp.n0;
      const auto ys = positive_variables(wp);
      const auto mminus = negative_monomials(wp);
      std::unordered_set<Monomial, MonomialHash> expected(mminus.begin(), mminus.end());
      std::unordered_set<Monomial, MonomialHash> seen;
      std::vector<Polynomial> partials;
      for (const auto& m : enumerate_monomials(static_cast<std::uint32_t>(ys.size()), k)) {
        const Polynomial dp = partial_derivative(wp.poly, DerivativeMultiset(remap(m, ys)));
        if (dp.is_zero()) continue;
        const auto& [mono, coeff] = *dp.terms().begin();
        if (dp.term_count() != 1 || !coeff.is_one() || !expected.count(mono)) {
          r.fail(where, "partial " + format_polynomial(dp) + " is not a monomial of M_-(w)");
          continue;
        }
        if (seen.insert(mono).second) partials.push_back(dp);
      }
      if (seen.size() != expected.size())
        r.fail(where, cat("partials reach ", seen.size(), " of ", expected.size(), " monomials of M_-(w)"));
      std::vector<Polynomial> gens;
      for (const auto& s : enumerate_monomials(static_cast<std::uint32_t>(ys.size()), l)) {
        const Monomial shift = remap(s, ys);
        for (const auto& dp : partials) gens.push_back(dp.times_monomial(shift));
      }
      const std::size_t rank = span_rank(gens, Field::prime(), o.budget);
      const mpz_class bound = count_monomials(wp.n - wp.n0, l) * zpow(2, static_cast<unsigned long>(h) * k);
      if (mpz_class(rank) < bound) r.fail(where, cat("rank ", rank, " < M(n - n0, l) 2^(hk) = ", bound.get_str()));
      r.notes.push_back(cat("P_w(h=2, d=4, k=2): n=", wp.n, " n0=", wp.n0, " l=", l, " generator-subset rank ", rank,
                            " >= ", bound.get_str()));
    });
  });
}

CheckReport check_families(const VerifyOptions& o) {
  return timed("families", [&](CheckReport& r) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
      for (std::uint32_t d = 1; d <= 4; ++d) {
        ++r.cases;
        const std::string where = cat("imm n=", n, " d=", d);
        guarded(r, where, [&] {
          const auto p = imm_polynomial(n, d, o.budget);
          const auto hom = is_homogeneous(p);
          if (mpz_class(p.term_count()) != zpow(n, d - 1) || !hom.homogeneous || hom.degree != d)
            r.fail(where, cat(p.term_count(), " terms; expected n^(d-1), homogeneous of degree d"));
        });
      }
    }
    for (std::uint32_t n = 1; n <= 4; ++n) {
      for (std::uint32_t e = 1; e <= 3; ++e) {
        ++r.cases;
        const std::string where = cat("quadratic power n=", n, " e=", e);
        guarded(r, where, [&] {
          const auto p = power_of_quadratic(n, e, o.budget);
          const auto hom = is_homogeneous(p);
          if (mpz_class(p.term_count()) != count_monomials(n, e) || !hom.homogeneous || hom.degree != 2 * e)
            r.fail(where, cat(p.term_count(), " terms; expected M(n, e), homogeneous of degree 2e"));
        });
      }
    }
    for (std::uint32_t q : {2u, 3u, 5u}) {
      for (std::uint32_t d = 1; d <= q; ++d) {
        for (std::uint32_t k = 1; k <= d; ++k) {
          ++r.cases;
          const std::string where = cat("nw q=", q, " d=", d, " k=", k);
          guarded(r, where, [&] {
            const auto nw = nw_polynomial(q, d, k, o.budget);
            const auto hom = is_homogeneous(nw.poly);
            if (mpz_class(nw.poly.term_count()) != zpow(q, k) || !hom.homogeneous || hom.degree != d)
              r.fail(where, cat(nw.poly.term_count(), " terms; expected q^k, homogeneous of degree d"));
          });
        }
      }
    }
    const std::vector<std::array<std::uint32_t, 3>> sigma = {{20, 4, 2}, {30, 4, 2}, {40, 6, 2}};
    for (const auto& [n, d, delta] : sigma) {
      ++r.cases;
      const std::string where = cat("p_sigma n=", n, " d=", d, " delta=", delta);
      guarded(r, where, [&] {
        const auto ps = p_sigma(n, d, delta, o.budget);
        const auto hom = is_homogeneous(ps.poly);
        if (!hom.homogeneous || hom.degree != d) r.fail(where, "not homogeneous of degree d");
        if (mpz_class(ps.poly.term_count()) != count_monomials(ps.n1, ps.k))
          r.fail(where, cat(ps.poly.term_count(), " terms, expected M(n1, k)"));
        for (const auto& [m, c] : ps.poly.terms()) {
          std::uint32_t ydeg = 0;
          for (const auto& [v, e] : m.factors())
            if (v <= ps.n1) ydeg += e;
          if (ydeg != ps.k) {
            r.fail(where, "term " + format_monomial(m) + " has y-degree != k");
            break;
          }
        }
        if (!apply_linear_map(ps.poly, ps.kill_y).is_zero()) r.fail(where, "killing y leaves a nonzero polynomial");
        if (n == 20 && (ps.k != 1 || ps.n0 != 16)) r.fail(where, cat("k = ", ps.k, ", n0 = ", ps.n0, "; expected 1, 16"));
      });
    }
  });
}

CheckReport check_nw_pd(const VerifyOptions& o) {
  return timed("nw-pd", [&](CheckReport& r) {
    const std::uint32_t max_d = medium(o) ? 6 : 5;
    const auto opts = measure_opts(o);
    for (std::uint32_t q : {2u, 3u, 5u}) {
      for (std::uint32_t d = 1; d <= max_d; ++d) {
        for (std::uint32_t k = 1; d >= 2 * k + 1; ++k) {
          ++r.cases;
          const std::string where = cat("q=", q, " d=", d, " k=", k);
          guarded(r, where, [&] {
            const auto nw = nw_polynomial(q, d, k, o.budget);
            const auto dim = pd_measure(nw.poly, k, opts).dimension;
            const mpz_class expected = binomial(d, k) * zpow(q, k);
            if (mpz_class(dim) != expected)
              r.fail(where, cat("PD = ", dim, ", C(d,k) q^k = ", expected.get_str(),
                                nw.distinct_points ? "" : " (d > q: evaluation points repeat)"));
          });
        }
      }
    }
  });
}

CheckReport check_nw_counts(const VerifyOptions& o) {
  return timed("nw-counts", [&](CheckReport& r) {
    const std::uint32_t max_l = medium(o) ? 3 : 2;
    std::uint64_t chi_not_decreasing = 0, pair_bound_below = 0, simple_above = 0;
    for (std::uint32_t q : {2u, 3u}) {
      for (std::uint32_t d = 1; d <= 4; ++d) {
        for (std::uint32_t k = 1; k <= std::min(2u, d); ++k) {
          for (std::uint32_t l = 0; l <= max_l; ++l) {
            ++r.cases;
            const std::string where = cat("q=", q, " d=", d, " k=", k, " l=", l);
            guarded(r, where, [&] {
              const auto rep = nw_count_identities(q, d, k, l, true, o.budget);
              const mpz_class& t = *rep.direct_t;
              if (*rep.direct_sum_t_h != rep.sum_t_h)
                r.fail(where, cat("sum |T_h| = ", rep.direct_sum_t_h->get_str(), ", formula ", rep.sum_t_h.get_str()));
              if (rep.ie_lower > t)
                r.fail(where, cat("inclusion-exclusion bound ", rep.ie_lower.get_str(), " > |T| = ", t.get_str()));
              // The k chi(0) simplification needs chi decreasing in r, which
              // only holds once d^2 is small against l; reported, not asserted.
              if (rep.ie_lower_simple > t) ++simple_above;
              // Bonferroni: |T| >= sum |T_h| - sum over unordered pairs.
              if (2 * t < 2 * *rep.direct_sum_t_h - *rep.direct_pairs || t > *rep.direct_sum_t_h)
                r.fail(where, "|T| violates the union bounds");
              if (!rep.chi_decreasing_from_zero) ++chi_not_decreasing;
              if (rep.pair_bound < *rep.direct_pairs) ++pair_bound_below;
            });
          }
        }
      }
    }
    r.notes.push_back(cat(chi_not_decreasing, " instances with chi(r) > chi(0) for some r"));
    r.notes.push_back(cat(pair_bound_below, " instances where sum chi(r) < the enumerated ordered-pair count"));
    r.notes.push_back(cat(simple_above, " instances where q^k t_h - k chi(0) exceeds |T|"));
  });
}

CheckReport check_app_vs_skewp(const VerifyOptions& o) {
  return timed("app-vs-skewp", [&](CheckReport& r) {
    const auto opts = measure_opts(o);
    for (std::uint32_t n = 1; n <= 8; ++n) {
      for (std::uint32_t k = 0; k <= std::min(3u, n); ++k) {
        ++r.cases;
        const std::string where = cat("vandermonde n=", n, " k=", k);
        guarded(r, where, [&] {
          const auto mv = monomial_and_vandermonde(n, k, k + 1);
          const auto dim = app_with_map(mv.poly, k, mv.map, opts).dimension;
          if (mpz_class(dim) != binomial(n, k)) r.fail(where, cat("APP = ", dim, ", expected C(n,k)"));
        });
      }
    }
    for (std::uint32_t n = 1; n <= 6; ++n) {
      std::vector<std::uint32_t> all(n);
      std::iota(all.begin(), all.end(), 1u);
      const Polynomial p = Polynomial::monomial(Monomial::from_variables(all), Scalar(1), n);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::uint32_t> y;
        for (std::uint32_t v = 1; v <= n; ++v)
          if (mask >> (v - 1) & 1u) y.push_back(v);
        for (std::uint32_t k = 0; k <= y.size(); ++k) {
          ++r.cases;
          const std::string where = cat("skewp n=", n, " y=", list(y), " k=", k);
          guarded(r, where, [&] {
            const auto dim = skewp_measure(p, y, k, opts).dimension;
            if (dim > 1) r.fail(where, cat("SkewP = ", dim));
          });
        }
      }
    }
  });
}

CheckReport check_rank_fields(const VerifyOptions& o) {
  return timed("rank-fields", [&](CheckReport& r) {
    const std::uint64_t sets = medium(o) ? 300 : 120;
    const std::vector<std::uint64_t> primes = {kDefaultPrime, 1000000007ULL, 998244353ULL};
    for (std::uint64_t i = 0; i < sets; ++i) {
      Rng rng(derive_seed(o.seed, kRank, i));
      const auto n = static_cast<std::uint32_t>(rng.uniform(1, 4));
      const auto count = rng.uniform(1, 8);
      std::vector<Polynomial> polys;
      for (std::int64_t j = 0; j < count; ++j) {
        const auto deg = static_cast<std::uint32_t>(rng.uniform(1, 4));
        polys.push_back(random_homogeneous(rng, n, deg, static_cast<std::uint32_t>(rng.uniform(1, 6))));
      }
      if (rng.coin()) {
        // Dependent rows: combinations of earlier members.
        const auto extra = rng.uniform(1, 3);
        for (std::int64_t j = 0; j < extra; ++j) {
          const Polynomial& a = rng.pick(polys);
          const Polynomial& b = rng.pick(polys);
          Polynomial c = a.scaled(nonzero_scalar(rng)) + b.scaled(nonzero_scalar(rng));
          polys.push_back(std::move(c));
        }
      }
      const std::string where = cat(where_random(o, kRank, i), " n=", n, " polys=", polys.size());
      guarded(r, where, [&] {
        const std::size_t r0 = span_rank(polys, Field::rational(), o.budget);
        for (auto p : primes) {
          ++r.cases;
          std::vector<Polynomial> reduced;
          for (const auto& f : polys) reduced.push_back(f.to_field(Field::prime(p)));
          const std::size_t rp = span_rank(reduced, Field::prime(p), o.budget);
          if (rp != r0) r.fail(cat(where, " p=", p), cat("rational rank ", r0, ", prime rank ", rp));
        }
      });
    }
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "residue",      "binomial", "containment",    "product-bounds", "subadditivity",
      "trees",        "upt-detect", "degseq",       "uptk",           "decompose-lowdepth",
      "decompose-upt", "hardpolys", "nw-identities", "app-vs-skewp",  "rank-fields"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

CheckReport run_suite(const std::string& name, const VerifyOptions& o) {
  using Check = CheckReport (*)(const VerifyOptions&);
  static const std::map<std::string, std::vector<Check>> checks = {
      {"residue", {check_residue_oracle}},
      {"binomial", {check_binomial_bounds}},
      {"containment", {check_containment}},
      {"product-bounds", {check_product_bounds}},
      {"subadditivity", {check_subadditivity}},
      {"trees", {check_canonical_trees}},
      {"upt-detect", {check_upt_detection}},
      {"degseq", {check_degseq}},
      {"uptk", {check_uptk}},
      {"decompose-lowdepth", {check_decompose_lowdepth}},
      {"decompose-upt", {check_decompose_upt}},
      {"hardpolys", {check_words, check_families}},
      {"nw-identities", {check_nw_pd, check_nw_counts}},
      {"app-vs-skewp", {check_app_vs_skewp}},
      {"rank-fields", {check_rank_fields}},
  };
  const auto it = checks.find(name);
  if (it == checks.end()) throw ParseError("unknown suite '" + name + "'");
  CheckReport out;
  out.name = name;
  for (Check c : it->second) out.merge(c(o));
  return out;
}

std::string format_report(const std::vector<CheckReport>& reports, bool timings) {
  constexpr std::size_t kShownFailures = 20;
  std::ostringstream os;
  std::uint64_t cases = 0, failures = 0;
  double seconds = 0;
  for (const auto& r : reports) {
    os << "suite " << r.name << ": cases=" << r.cases << " failures=" << r.failures.size();
    if (timings) os << " time=" << std::fixed << std::setprecision(2) << r.seconds << "s";
    os << "\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    for (std::size_t i = 0; i < r.failures.size() && i < kShownFailures; ++i)
      os << "  FAIL " << r.failures[i].where << ": " << r.failures[i].detail << "\n";
    if (r.failures.size() > kShownFailures) os << "  ... " << r.failures.size() - kShownFailures << " more failures\n";
    cases += r.cases;
    failures += r.failures.size();
    seconds += r.seconds;
  }
  os << "total: suites=" << reports.size() << " cases=" << cases << " failures=" << failures;
  if (timings) os << " time=" << std::fixed << std::setprecision(2) << seconds << "s";
  os << "\n";
  return os.str();
}

}  // namespace shiftpd
