#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftpd/rank.hpp"
#include "shiftpd/scalar.hpp"

namespace shiftpd {

enum class Scale { Small, Medium };
Scale parse_scale(const std::string& s);

struct VerifyOptions {
  std::uint64_t seed = 42;
  Scale scale = Scale::Small;
  Budget budget{};
};

struct VerifyFailure {
  std::string where;   // reproduction parameters
  std::string detail;
};

struct CheckReport {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<VerifyFailure> failures;
  std::vector<std::string> notes;  // measured values worth printing
  double seconds = 0;

  bool ok() const { return failures.empty(); }
  void fail(std::string where, std::string detail) { failures.push_back({std::move(where), std::move(detail)}); }
  void merge(const CheckReport& o);
};

// Individual checks. Each one is deterministic given the options; random
// cases use derive_seed(seed, <check stream>, case index).
CheckReport check_residue_oracle(const VerifyOptions& o);        // residue == brute force, <= k/2
CheckReport check_binomial_bounds(const VerifyOptions& o);       // M(a,b) approximations
CheckReport check_containment(const VerifyOptions& o);           // derivative-space containment
CheckReport check_product_bounds(const VerifyOptions& o);        // SP / APP of products vs bounds
CheckReport check_subadditivity(const VerifyOptions& o);         // SP and APP sub-additive
CheckReport check_canonical_trees(const VerifyOptions& o);       // can() vs brute-force isomorphism
CheckReport check_upt_detection(const VerifyOptions& o);         // is_upt vs parse-tree enumeration
CheckReport check_degseq(const VerifyOptions& o);                // deg_seq invariants
CheckReport check_uptk(const VerifyOptions& o);                  // Upt-K traces
CheckReport check_decompose_lowdepth(const VerifyOptions& o);    // recombination, s, item-2 conditions
CheckReport check_decompose_upt(const VerifyOptions& o);         // recombination, s, uniform degrees
CheckReport check_words(const VerifyOptions& o);                 // word construction and P_w
CheckReport check_families(const VerifyOptions& o);              // IMM, P_sigma, power of quadratic
CheckReport check_nw_pd(const VerifyOptions& o);                 // PD of NW = C(d,k) q^k
CheckReport check_nw_counts(const VerifyOptions& o);             // |T_h| sums and inclusion-exclusion
CheckReport check_app_vs_skewp(const VerifyOptions& o);          // Vandermonde APP and SkewP <= 1
CheckReport check_rank_fields(const VerifyOptions& o);           // rational rank == prime ranks

// Suites group checks; "all" runs every suite in list order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
CheckReport run_suite(const std::string& name, const VerifyOptions& o);

// One block per suite plus a total line. Wall times only when asked.
std::string format_report(const std::vector<CheckReport>& reports, bool timings);

}  // namespace shiftpd
