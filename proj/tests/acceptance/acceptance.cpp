// Acceptance run: one PASS/FAIL line per criterion. Tolerances are the
// constants below; every comparison inside the checks is exact.

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "shiftpd/verify.hpp"

using namespace shiftpd;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

VerifyOptions options() {
  VerifyOptions o;
  o.seed = kSeed;
  return o;
}

// Each check runs once even when two criteria read it.
const CheckReport& report(const std::string& name, CheckReport (*check)(const VerifyOptions&)) {
  static std::map<std::string, CheckReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, check(options())).first;
  return it->second;
}

bool mentions(const VerifyFailure& f, const std::string& needle) {
  return f.detail.find(needle) != std::string::npos;
}

// Failures selected by `keep`, summarized; also enforces a minimum case count.
Outcome judge(const CheckReport& r, std::uint64_t min_cases,
              const std::function<bool(const VerifyFailure&)>& keep = [](const VerifyFailure&) { return true; }) {
  Outcome out;
  std::vector<const VerifyFailure*> hits;
  for (const auto& f : r.failures)
    if (keep(f)) hits.push_back(&f);
  std::ostringstream os;
  os << r.cases << " cases";
  if (r.cases < min_cases) {
    out.pass = false;
    os << " (need >= " << min_cases << ")";
  }
  if (!hits.empty()) {
    out.pass = false;
    os << ", " << hits.size() << " failures, first: " << hits.front()->where << ": " << hits.front()->detail;
  }
  out.detail = os.str();
  return out;
}

Outcome combine(Outcome a, const Outcome& b) {
  a.pass = a.pass && b.pass;
  a.detail += "; " + b.detail;
  return a;
}

std::string run_command(const std::string& cmd) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0;) out.append(buf.data(), n);
  return out;
}

std::vector<Criterion> criteria() {
  const auto residue_report = [] { return report("residue", check_residue_oracle); };
  const auto lowdepth_report = [] { return report("lowdepth", check_decompose_lowdepth); };
  const auto structural = [](const VerifyFailure& f) { return mentions(f, "low-depth condition"); };
  return {
      {1, "residue equals brute force (t <= 4, d_i <= 6, every k < d)", 10,
       [=] { return judge(residue_report(), 1, [](const auto& f) { return mentions(f, "brute force"); }); }},
      {2, "residue at most k/2 on the same grid", 10,
       [=] { return judge(residue_report(), 1, [](const auto& f) { return mentions(f, "exceeds k/2"); }); }},
      {3, "binomial estimates as exact inequalities (c <= b <= a <= 40, d <= 10)", 5,
       [] { return judge(report("binomial", check_binomial_bounds), 1); }},
      {4, "derivative-space containment on 200 random products", 180,
       [] { return judge(report("containment", check_containment), 200); }},
      {5, "SP and APP of products stay under the product bounds", 120,
       [] { return judge(report("product", check_product_bounds), 1); }},
      {6, "sub-additivity of SP and of APP at a fixed map", 60,
       [] { return judge(report("subadd", check_subadditivity), 100); }},
      {7, "PD of the design polynomial is C(d,k) q^k (q in {2,3,5}, d <= 5, d-k >= k+1)", 30,
       [] { return judge(report("nwpd", check_nw_pd), 1); }},
      {8, "Vandermonde APP = C(n,k) and SkewP <= 1 on products of variables", 30,
       [] { return judge(report("app", check_app_vs_skewp), 1); }},
      {9, "canonical trees on every tree with <= 9 leaves", 30,
       [] { return judge(report("trees", check_canonical_trees), 1); }},
      {10, "bottom-up UPT test agrees with parse-tree enumeration (300 formulas)", 60,
       [] { return judge(report("upt", check_upt_detection), 300); }},
      {11, "deg-seq invariants on every canonical tree with <= 12 leaves", 30,
       [] { return judge(report("degseq", check_degseq), 1); }},
      {12, "Upt-K: k = 3 with a_1 = 1 at d = 81, and k in [d/30, d/2]", 10,
       [] { return judge(report("uptk", check_uptk), 1); }},
      {13, "both decompositions recombine exactly with s <= size and deg-seq degrees", 180,
       [=] {
         return combine(judge(lowdepth_report(), 200, [=](const auto& f) { return !structural(f); }),
                        judge(report("uptdecomp", check_decompose_upt), 200));
       }},
      {14, "every low-depth summand meets one of the structural conditions", 180,
       [=] { return judge(lowdepth_report(), 200, structural); }},
      {15, "unbiased words, |M_-| = 2^(hk), generator-subset rank bound", 120,
       [] { return judge(report("words", check_words), 1); }},
      {16, "design counting identities against enumeration", 60,
       [] { return judge(report("nwcounts", check_nw_counts), 1); }},
      {17, "rational rank equals the rank over three primes (100+ sets)", 60,
       [] { return judge(report("rank", check_rank_fields), 100); }},
      {18, "`verify all --seed 42` is byte-identical across two runs", 600,
       [] {
         const std::string cmd = std::string("\"") + SHIFTPD_CLI + "\" verify all --seed 42 2>&1";
         const auto a = run_command(cmd);
         const auto b = run_command(cmd);
         Outcome out;
         out.pass = !a.empty() && a == b;
         out.detail = a.empty() ? "no output" : std::to_string(a.size()) + (a == b ? " bytes, identical" : " bytes, differ");
         return out;
       }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-18)")->check(CLI::Range(1, 18));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      out.pass = false;
      out.detail += "; over the time limit";
    }
    all_pass = all_pass && out.pass;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs << "s/" << c.limit_seconds << "s";
    std::cout << (out.pass ? "PASS" : "FAIL") << " " << c.id << ". " << c.title << " [" << out.detail << "] ("
              << time.str() << ")\n";
  }
  return all_pass ? 0 : 1;
}
