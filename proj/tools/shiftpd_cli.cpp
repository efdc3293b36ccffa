#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "shiftpd/decompose.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/formula.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/serialize.hpp"
#include "shiftpd/sweep.hpp"
#include "shiftpd/upt.hpp"
#include "shiftpd/verify.hpp"

using namespace shiftpd;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 42;
  std::string scale = "small";
  std::string field = "rational";
  std::optional<std::uint64_t> budget;

  Budget budget_caps() const {
    Budget b;
    if (budget) b.max_entries = *budget;
    return b;
  }
  MeasureOptions measure_options() const {
    MeasureOptions m;
    m.field = Field::parse(field);
    m.budget = budget_caps();
    return m;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_input(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct TreeInput {
  std::string encoding;
  std::size_t caterpillar = 0;
  std::size_t balanced = 0;

  void attach(CLI::App* cmd) {
    auto* t = cmd->add_option("--tree", encoding, "Tree encoding, e.g. (L,(L,L))");
    auto* c = cmd->add_option("--caterpillar", caterpillar, "Right caterpillar with this many leaves");
    auto* b = cmd->add_option("--balanced", balanced, "Balanced tree with this many leaves");
    t->excludes(c)->excludes(b);
    c->excludes(b);
  }
  bool given() const { return !encoding.empty() || caterpillar || balanced; }
  BinaryTree tree() const {
    if (caterpillar) return shiftpd::caterpillar(caterpillar);
    if (balanced) return balanced_tree(balanced);
    if (encoding.empty()) throw ParseError("give --tree, --caterpillar or --balanced");
    return BinaryTree::parse(encoding);
  }
};

std::vector<std::uint32_t> parse_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw ParseError("bad integer list '" + text + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted-partials experiments: constructions, measures, decompositions, property suites"};
  app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by construct --h
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "Run seed")->capture_default_str();
  app.add_option("--scale", g.scale, "Suite grid bounds")->check(CLI::IsMember({"small", "medium"}));
  app.add_option("--field", g.field, "rational, prime or prime:<p>")->capture_default_str();
  app.add_option("--budget", g.budget, "Cap on stored matrix entries of one elimination");

  // construct
  auto* construct = app.add_subcommand("construct", "Build a polynomial family member");
  std::string family;
  std::uint32_t q = 0, n = 0, d = 0, k = 0, e = 0, delta = 0, n0 = 0;
  int h = 0;
  std::string out_path;
  construct->add_option("family", family, "Family")
      ->required()
      ->check(CLI::IsMember({"nw", "imm", "word", "psigma", "monomial", "quadpower"}));
  construct->add_option("--q", q);
  construct->add_option("--n", n);
  construct->add_option("--d", d);
  construct->add_option("--k", k);
  construct->add_option("--h", h);
  construct->add_option("--e", e);
  construct->add_option("--delta", delta);
  construct->add_option("--n0", n0, "monomial: Vandermonde target count (k + 1)");
  construct->add_option("--output", out_path, "Polynomial file; the JSON sidecar goes to <output>.json");

  // measure
  auto* measure = app.add_subcommand("measure", "Compute a measure of a polynomial file");
  std::string input, which = "sp", yvars;
  std::uint32_t l = 0, trials = 4;
  measure->add_option("input", input, "Polynomial file, - for stdin")->required();
  measure->add_option("--measure", which)->check(CLI::IsMember({"span", "sp", "pd", "app", "skewp"}));
  measure->add_option("--k", k);
  measure->add_option("--l", l);
  measure->add_option("--n0", n0);
  measure->add_option("--trials", trials, "Sampled maps for app");
  measure->add_option("--y", yvars, "skewp: comma-separated y variable indices");

  // residue
  auto* res_cmd = app.add_subcommand("residue", "residue_k(d_1..d_t)");
  std::string degrees;
  bool constrained = false;
  res_cmd->add_option("--k", k)->required();
  res_cmd->add_option("--degrees", degrees, "Comma-separated d_1..d_t")->required();
  res_cmd->add_flag("--constrained", constrained, "0 <= k_i <= d_i, sum k_i = k");

  // degseq / uptk / canon
  TreeInput tree_in;
  auto* degseq_cmd = app.add_subcommand("degseq", "Deg-seq of the canonical form of a tree");
  tree_in.attach(degseq_cmd);
  auto* uptk_cmd = app.add_subcommand("uptk", "Upt-K trace of a tree or degree sequence");
  tree_in.attach(uptk_cmd);
  uptk_cmd->add_option("--degrees", degrees, "Degree sequence instead of a tree");
  auto* canon_cmd = app.add_subcommand("canon", "Canonical form of a tree");
  tree_in.attach(canon_cmd);

  // check-upt / decompose
  auto* upt_cmd = app.add_subcommand("check-upt", "Is every parse tree of the formula isomorphic?");
  upt_cmd->add_option("formula", input, "Formula JSON file")->required();
  auto* dec_cmd = app.add_subcommand("decompose", "Sum-of-products decomposition of a formula");
  std::string mode = "lowdepth";
  std::optional<std::uint32_t> threshold;
  dec_cmd->add_option("formula", input, "Formula JSON file")->required();
  dec_cmd->add_option("--mode", mode)->check(CLI::IsMember({"lowdepth", "upt"}));
  dec_cmd->add_option("--threshold", threshold, "lowdepth: degree threshold (default deg f)");

  // verify / sweep
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite, or all");
  std::string suite;
  bool timings = false;
  verify_cmd->add_option("suite", suite)->required();
  verify_cmd->add_flag("--timings", timings, "Print wall times (output no longer byte-stable)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep spec and write CSV");
  std::string csv_path;
  std::optional<unsigned> threads;
  sweep_cmd->add_option("spec", input, "Sweep spec JSON")->required();
  sweep_cmd->add_option("--output", csv_path, "CSV path (default: spec output, else stdout)");
  sweep_cmd->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsage;
  }

  try {
    const Budget budget = g.budget_caps();
    if (*construct) {
      Json params{{"family", family}};
      Json extra;
      Polynomial p;
      if (family == "nw") {
        const auto nw = nw_polynomial(q, d, k, budget);
        p = nw.poly;
        params.update({{"q", q}, {"d", d}, {"k", k}});
        extra["distinctPoints"] = nw.distinct_points;
      } else if (family == "imm") {
        p = imm_polynomial(n, d, budget);
        params.update({{"n", n}, {"d", d}});
      } else if (family == "word") {
        const auto wp = word_polynomial(construct_unbiased_word(h, d, k), budget);
        p = wp.poly;
        params.update({{"h", h}, {"d", d}, {"k", k}});
        extra["word"] = to_json(wp.word);
        extra["n0"] = wp.n0;
        extra["setOffsets"] = wp.set_offset;
        extra["setSizes"] = wp.set_size;
        extra["yVariables"] = positive_variables(wp);
      } else if (family == "psigma") {
        const auto ps = p_sigma(n, d, delta, budget);
        p = ps.poly;
        params.update({{"n", n}, {"d", d}, {"delta", delta}});
        extra.update({{"k", ps.k}, {"n0", ps.n0}, {"n1", ps.n1}});
      } else if (family == "monomial") {
        const auto mv = monomial_and_vandermonde(n, k, n0 ? n0 : k + 1);
        p = mv.poly;
        params.update({{"n", n}, {"k", k}, {"n0", n0 ? n0 : k + 1}});
      } else {
        p = power_of_quadratic(n, e, budget);
        params.update({{"n", n}, {"e", e}});
      }
      const auto deg = p.degree();
      Json sidecar{{"params", params}, {"nvars", p.nvars()}, {"terms", p.term_count()},
                   {"degree", deg ? Json(*deg) : Json(nullptr)}};
      if (!extra.is_null()) sidecar["details"] = extra;
      if (out_path.empty()) {
        std::cout << format_polynomial(p) << "\n";
      } else {
        write_file(out_path, format_polynomial(p) + "\n");
        write_file(out_path + ".json", dump(sidecar));
        std::cout << dump(sidecar);
      }
      return kOk;
    }

    if (*measure) {
      const Polynomial p = parse_polynomial(read_input(input));
      const auto opts = g.measure_options();
      MeasureResult r;
      if (which == "span") r = span_dimension({p}, opts);
      else if (which == "sp") r = sp_measure(p, k, l, opts);
      else if (which == "pd") r = pd_measure(p, k, opts);
      else if (which == "app") r = app_sampled(p, k, n0, trials, g.seed, opts);
      else r = skewp_measure(p, yvars.empty() ? std::vector<std::uint32_t>{} : parse_list(yvars), k, opts);
      std::cout << dump(to_json(r));
      return kOk;
    }

    if (*res_cmd) {
      const auto degs = parse_list(degrees);
      const auto r = constrained ? residue_constrained(k, degs) : residue(k, degs);
      Json j = to_json(r);
      j["k"] = k;
      j["degrees"] = degs;
      j["constrained"] = constrained;
      std::cout << dump(j);
      return kOk;
    }

    if (*degseq_cmd) {
      const BinaryTree t = canonical_tree(tree_in.tree());
      Json j = to_json(deg_seq(t));
      j["canonical"] = t.encoding();
      std::cout << dump(j);
      return kOk;
    }

    if (*uptk_cmd) {
      if (tree_in.given() == !degrees.empty()) throw ParseError("give a tree or --degrees, not both");
      const DegreeSequence ds =
          degrees.empty() ? deg_seq(canonical_tree(tree_in.tree())) : make_degree_sequence(parse_list(degrees));
      Json j = to_json(upt_k(ds));
      j["degreeSequence"] = to_json(ds);
      std::cout << dump(j);
      return kOk;
    }

    if (*canon_cmd) {
      const BinaryTree t = tree_in.tree();
      const BinaryTree c = canonical_tree(t);
      std::cout << dump(Json{{"input", t.encoding()}, {"canonical", c.encoding()}, {"leaves", c.leaves()}});
      return kOk;
    }

    if (*upt_cmd) {
      const Formula f = formula_from_json(read_json(input));
      const auto r = is_upt(f);
      Json j{{"upt", r.upt}, {"parseTrees", count_parse_trees(f).get_str()}};
      j["tree"] = r.tree ? Json(r.tree->encoding()) : Json(nullptr);
      std::cout << dump(j);
      return kOk;
    }

    if (*dec_cmd) {
      const Formula f = formula_from_json(read_json(input));
      const ProductDecomposition pd =
          mode == "upt" ? upt_log_product_decompose(f) : low_depth_decompose(f, threshold);
      const bool exact = pd.recombine() == eval_formula(f);
      Json j = to_json(pd);
      j["mode"] = mode;
      j["recombination"] = exact ? "exact" : "mismatch";
      if (mode == "lowdepth") {
        const auto deg = eval_formula(f).degree().value_or(0);
        j["lds"] = to_json(check_lds_conditions(pd, deg, pd.product_depth));
        j["params"] = to_json(low_depth_k(deg, pd.product_depth));
      }
      std::cout << dump(j);
      return exact ? kOk : kVerifyFailed;
    }

    if (*verify_cmd) {
      if (suite != "all" && !is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'; one of: all";
        for (const auto& s : suite_names()) std::cerr << " " << s;
        std::cerr << "\n";
        return kUsage;
      }
      VerifyOptions o;
      o.seed = g.seed;
      o.scale = parse_scale(g.scale);
      o.budget = budget;
      std::vector<CheckReport> reports;
      bool ok = true;
      for (const auto& s : suite == "all" ? suite_names() : std::vector<std::string>{suite}) {
        reports.push_back(run_suite(s, o));
        ok = ok && reports.back().ok();
      }
      std::cout << format_report(reports, timings);
      return ok ? kOk : kVerifyFailed;
    }

    if (*sweep_cmd) {
      SweepSpec spec = parse_sweep_spec(read_json(input));
      if (threads) spec.threads = *threads;
      if (g.budget) spec.budget.max_entries = *g.budget;
      const std::string csv = run_sweep(spec);
      const std::string target = !csv_path.empty() ? csv_path : spec.output.value_or("");
      if (target.empty()) std::cout << csv;
      else write_file(target, csv);
      return kOk;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
