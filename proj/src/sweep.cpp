#include "shiftpd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

#include "shiftpd/bounds.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/random.hpp"
#include "shiftpd/residue.hpp"

namespace shiftpd {

namespace {

const std::map<std::string, std::vector<std::string>>& family_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"nw", {"q", "d", "k"}},        {"imm", {"n", "d"}},      {"word", {"h", "d", "k"}},
      {"psigma", {"n", "d", "delta"}}, {"quadpower", {"n", "e"}}, {"monomial", {"n"}},
      {"product", {"n", "d", "t"}}};
  return m;
}

using Point = std::map<std::string, std::int64_t>;
using Cells = std::map<std::string, std::string>;

std::vector<std::int64_t> parse_grid(const std::string& name, const Json& g) {
  std::vector<std::int64_t> out;
  if (g.is_array()) {
    for (const auto& v : g) out.push_back(v.get<std::int64_t>());
    return out;
  }
  if (!g.is_object()) throw ParseError("grid '" + name + "' must be a list or {from, to, step}");
  const auto from = g.at("from").get<std::int64_t>();
  const auto to = g.at("to").get<std::int64_t>();
  const auto step = g.value("step", std::int64_t{1});
  if (step <= 0) throw ParseError("grid '" + name + "' needs a positive step");
  for (std::int64_t v = from; v <= to; v += step) out.push_back(v);
  return out;
}

std::uint32_t as_u32(const Point& p, const std::string& name) {
  const auto v = p.at(name);
  if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX)) throw DomainError(name + " out of range");
  return static_cast<std::uint32_t>(v);
}

std::optional<std::uint32_t> maybe_u32(const Point& p, const std::string& name) {
  if (!p.count(name)) return std::nullopt;
  return as_u32(p, name);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct Family {
  Polynomial poly;
  std::optional<std::uint32_t> k, n0, n;
  std::optional<std::vector<std::uint32_t>> degrees;  // product structure, when there is one
};

Family build(const SweepSpec& s, const Point& p) {
  Family f;
  f.k = maybe_u32(p, "k");
  f.n0 = maybe_u32(p, "n0");
  const auto u = [&](const char* name) { return as_u32(p, name); };
  if (s.family == "nw") {
    f.poly = nw_polynomial(u("q"), u("d"), u("k"), s.budget).poly;
  } else if (s.family == "imm") {
    f.poly = imm_polynomial(u("n"), u("d"), s.budget);
  } else if (s.family == "word") {
    const auto wp = word_polynomial(construct_unbiased_word(static_cast<int>(u("h")), u("d"), u("k")), s.budget);
    f.poly = wp.poly;
    f.n = wp.n;
    if (!f.n0) f.n0 = wp.n0;
  } else if (s.family == "psigma") {
    const auto ps = p_sigma(u("n"), u("d"), u("delta"), s.budget);
    f.poly = ps.poly;
    if (!f.k) f.k = ps.k;
    if (!f.n0) f.n0 = ps.n0;
  } else if (s.family == "quadpower") {
    f.poly = power_of_quadratic(u("n"), u("e"), s.budget);
  } else if (s.family == "monomial") {
    const auto n = u("n");
    if (n == 0) throw DomainError("monomial needs n >= 1");
    std::vector<std::uint32_t> vars(n);
    for (std::uint32_t i = 0; i < n; ++i) vars[i] = i + 1;
    f.poly = Polynomial::monomial(Monomial::from_variables(vars), Scalar(1), n);
  } else if (s.family == "product") {
    const auto n = u("n"), d = u("d"), t = u("t");
    if (n == 0 || t == 0 || t > d) throw DomainError("product needs n >= 1 and 1 <= t <= d");
    // Seeded by the parameters, so a point's factors do not depend on the rest of the grid.
    Rng rng(derive_seed(s.seed, 100 + t, (static_cast<std::uint64_t>(n) << 32) | d));
    f.degrees = random_composition(rng, d, t);
    f.poly = Polynomial::constant(Scalar(1), n);
    for (auto deg : *f.degrees) f.poly = f.poly * random_homogeneous(rng, n, deg, 3);
  }
  return f;
}

Cells evaluate(const SweepSpec& s, const Point& p) {
  Cells out;
  for (const auto& [name, v] : p) out[name] = std::to_string(v);
  const Cells params = out;
  try {
    const Family f = build(s, p);
    if (f.k) out["k"] = std::to_string(*f.k);
    if (f.n0) out["n0"] = std::to_string(*f.n0);
    if (f.n) out["n"] = std::to_string(*f.n);
    out["nvars"] = std::to_string(f.poly.nvars());
    out["terms"] = std::to_string(f.poly.term_count());
    const std::uint32_t l = maybe_u32(p, "l").value_or(0);
    const auto deg = f.poly.degree();
    if (f.k && deg && *f.k <= *deg)
      out["ambient_sp"] = count_monomials(f.poly.nvars(), *deg - *f.k + l).get_str();
    if (f.degrees && f.k && deg && *f.k < *deg) {
      out["product_sp_bound"] = product_sp_bound(f.poly.nvars(), *f.degrees, *f.k, l).get_str();
      out["residue"] = residue(*f.k, *f.degrees).value.get_str();
    }
    MeasureOptions mo;
    mo.budget = s.budget;
    for (const auto& m : s.measures) {
      if (m == "pd") out["pd"] = std::to_string(pd_measure(f.poly, *f.k, mo).dimension);
      if (m == "sp") out["sp"] = std::to_string(sp_measure(f.poly, *f.k, l, mo).dimension);
      if (m == "app") {
        if (!f.n0) throw DomainError("app needs n0");
        out["app"] = std::to_string(app_sampled(f.poly, *f.k, *f.n0, s.app_trials, s.seed, mo).dimension);
      }
    }
    out["status"] = "ok";
  } catch (const BudgetExceeded&) {
    out = params;
    out["status"] = "budget-exceeded";
  } catch (const Error&) {
    out = params;
    out["status"] = "invalid";
  }
  return out;
}

std::vector<Point> grid_points(const SweepSpec& s) {
  std::vector<Point> points;
  for (const auto& [name, values] : s.grids)
    if (values.empty()) return points;
  std::vector<std::size_t> idx(s.grids.size(), 0);
  while (true) {
    Point p;
    for (std::size_t i = 0; i < s.grids.size(); ++i) p[s.grids[i].first] = s.grids[i].second[idx[i]];
    points.push_back(std::move(p));
    std::size_t i = s.grids.size();
    while (i > 0) {
      --i;
      if (++idx[i] < s.grids[i].second.size()) break;
      idx[i] = 0;
      if (i == 0) return points;
    }
    if (s.grids.empty()) return points;
  }
}

}  // namespace

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> p = {"q", "n", "d", "k", "h", "e", "delta", "t", "l", "n0"};
  return p;
}

std::vector<std::string> sweep_columns(bool timings) {
  std::vector<std::string> c = {"family"};
  for (const auto& p : sweep_parameters()) c.push_back(p);
  for (const char* x : {"nvars", "terms", "pd", "sp", "app", "ambient_sp", "product_sp_bound", "residue", "status"})
    c.emplace_back(x);
  if (timings) c.emplace_back("runtime_ms");
  return c;
}

SweepSpec parse_sweep_spec(const Json& j) {
  try {
    SweepSpec s;
    s.family = j.at("family").get<std::string>();
    const auto fam = family_params().find(s.family);
    if (fam == family_params().end()) throw ParseError("unknown family '" + s.family + "'");
    const auto& grids = j.at("grids");
    if (!grids.is_object()) throw ParseError("grids must be an object");
    const auto& names = sweep_parameters();
    for (const auto& [name, g] : grids.items()) {
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw ParseError("unknown grid parameter '" + name + "'");
    }
    for (const auto& name : names) {
      if (grids.contains(name)) s.grids.emplace_back(name, parse_grid(name, grids.at(name)));
    }
    for (const auto& need : fam->second) {
      if (!grids.contains(need)) throw ParseError("family " + s.family + " needs a grid for '" + need + "'");
    }
    for (const auto& m : j.value("measures", Json::array())) {
      const auto name = m.get<std::string>();
      if (name != "pd" && name != "sp" && name != "app") throw ParseError("unknown measure '" + name + "'");
      s.measures.push_back(name);
    }
    if (!s.measures.empty() && s.family != "psigma" && !grids.contains("k"))
      throw ParseError("measures need a grid for 'k'");
    if (std::find(s.measures.begin(), s.measures.end(), "app") != s.measures.end() && s.family != "word" &&
        s.family != "psigma" && !grids.contains("n0"))
      throw ParseError("app needs a grid for 'n0'");
    s.seed = j.value("seed", std::uint64_t{42});
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      if (b.is_object()) {
        s.budget.max_terms = b.value("terms", s.budget.max_terms);
        s.budget.max_entries = b.value("entries", s.budget.max_entries);
      } else {
        s.budget.max_entries = b.get<std::uint64_t>();
      }
      if (s.budget.max_terms == 0 || s.budget.max_entries == 0) throw ParseError("budget must be positive");
    }
    s.threads = j.value("threads", 1u);
    if (s.threads == 0) throw ParseError("threads must be >= 1");
    s.app_trials = j.value("app_trials", 3u);
    s.timings = j.value("timings", false);
    if (j.contains("output")) s.output = j.at("output").get<std::string>();
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("sweep spec: ") + e.what());
  }
}

std::string run_sweep(const SweepSpec& spec) {
  const auto points = grid_points(spec);
  std::vector<Cells> rows(points.size());
  std::vector<long long> millis(points.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      rows[i] = evaluate(spec, points[i]);
      millis[i] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const auto columns = sweep_columns(spec.timings);
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i]["family"] = spec.family;
    if (spec.timings) rows[i]["runtime_ms"] = std::to_string(millis[i]);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto it = rows[i].find(columns[c]);
      os << (c ? "," : "") << (it == rows[i].end() ? "" : csv_cell(it->second));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace shiftpd
