#include <sstream>

#include "shiftpd/decompose.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/formula_gen.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/serialize.hpp"
#include "shiftpd/sweep.hpp"
#include "shiftpd/verify.hpp"
#include "test_util.hpp"

using namespace shiftpd;
using testutil::P;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string cell(const std::vector<std::vector<std::string>>& rows, std::size_t r, const std::string& col) {
  const auto& header = rows.front();
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == col) return c < rows[r].size() ? rows[r][c] : "";
  FAIL("no column " << col);
  return "";
}

SweepSpec nw_spec() {
  return parse_sweep_spec(Json::parse(R"({"family": "nw", "grids": {"q": [2, 3], "d": [3, 4], "k": [1, 2]},
                                          "measures": ["pd"]})"));
}

}  // namespace

TEST_CASE("formula json round trip") {
  Rng rng(derive_seed(19, 1, 0));
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_homogeneous_formula(rng, 3, static_cast<std::uint32_t>(rng.uniform(1, 5)), 25);
    const auto j = formula_to_json(f);
    const auto g = formula_from_json(Json::parse(dump(j)));
    CHECK(eval_formula(g) == eval_formula(f));
    CHECK(dump(formula_to_json(g)) == dump(j));
  }
  CHECK_THROWS_AS(formula_from_json(Json::parse(R"({"nvars": 1, "root": 0})")), ParseError);
  CHECK_THROWS_AS(formula_from_json(Json::parse(R"({"nvars": 1, "root": 3, "nodes": [{"id": 0, "op": "in", "var": 1}]})")),
                  Error);
}

TEST_CASE("measure and decomposition json") {
  const auto j = to_json(sp_measure(P("x1*x2*x3", 3), 1, 0));
  CHECK(j.at("measure") == "sp");
  CHECK(j.at("dimension") == 3);
  CHECK(j.at("ambient") == "6");  // M(3, 2)
  CHECK(to_json(pd_measure(P("x1*x2*x3", 3), 1)).at("measure") == "pd");
  CHECK(j.at("field") == "rational");
  for (const char* key : {"k", "l", "n0", "generators"}) CHECK(j.contains(key));

  FormulaBuilder b(4);
  const auto f = b.build(b.add({b.mul({b.input(1), b.input(2)}), b.mul({b.input(3), b.input(4)})}));
  const auto pj = to_json(low_depth_decompose(f));
  CHECK(pj.at("s") == 2);
  CHECK(pj.at("sourceSize") == f.size());
  CHECK(pj.at("summands").size() == 2);
  CHECK(pj.at("summands")[0].at("factors")[0].is_string());
}

TEST_CASE("sweep over a design polynomial grid") {
  const auto rows = csv_rows(run_sweep(nw_spec()));
  REQUIRE(rows.size() == 9);
  CHECK(rows.front() == sweep_columns(false));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto q = std::stoul(cell(rows, r, "q"));
    const auto d = std::stoul(cell(rows, r, "d"));
    const auto k = std::stoul(cell(rows, r, "k"));
    CHECK(cell(rows, r, "status") == "ok");
    CHECK(cell(rows, r, "family") == "nw");
    if (d - k >= k + 1)
      CHECK(std::stoull(cell(rows, r, "pd")) ==
            testutil::pascal(static_cast<unsigned>(d), static_cast<unsigned>(k)) * (k == 1 ? q : q * q));
  }
  // Grid order: last parameter fastest.
  CHECK(cell(rows, 1, "q") == "2");
  CHECK(cell(rows, 2, "k") == "2");
  CHECK(cell(rows, 5, "q") == "3");
}

TEST_CASE("sweep edge cases") {
  auto empty = parse_sweep_spec(Json::parse(R"({"family": "nw", "grids": {"q": [], "d": [3], "k": [1]}})"));
  CHECK(csv_rows(run_sweep(empty)).size() == 1);

  auto bad = parse_sweep_spec(Json::parse(R"({"family": "nw", "grids": {"q": [4], "d": [3], "k": [1]}})"));
  CHECK(cell(csv_rows(run_sweep(bad)), 1, "status") == "invalid");

  auto big = parse_sweep_spec(
      Json::parse(R"({"family": "imm", "grids": {"n": [3], "d": [6]}, "budget": {"terms": 10, "entries": 1000}})"));
  const auto rows = csv_rows(run_sweep(big));
  CHECK(cell(rows, 1, "status") == "budget-exceeded");
  CHECK(cell(rows, 1, "terms") == "");

  CHECK_THROWS_AS(parse_sweep_spec(Json::parse(R"({"family": "nope", "grids": {}})")), ParseError);
  CHECK_THROWS_AS(parse_sweep_spec(Json::parse(R"({"family": "nw", "grids": {"q": [2], "d": [3]}})")), ParseError);
  CHECK_THROWS_AS(parse_sweep_spec(Json::parse(R"({"family": "imm", "grids": {"n": [2], "d": [2]},
                                                   "measures": ["pd"]})")),
                  ParseError);
  const auto range = parse_sweep_spec(Json::parse(R"({"family": "monomial", "grids": {"n": {"from": 2, "to": 8, "step": 3}}})"));
  CHECK(range.grids.at(0).second == std::vector<std::int64_t>{2, 5, 8});
}

TEST_CASE("sweeps are deterministic across reruns and thread counts") {
  auto spec = parse_sweep_spec(Json::parse(R"({"family": "product", "grids": {"n": [2, 3], "d": [3, 4, 5],
      "t": [1, 2, 3], "k": [1, 2], "l": [0, 1]}, "measures": ["sp"], "seed": 7})"));
  const auto once = run_sweep(spec);
  CHECK(run_sweep(spec) == once);
  spec.threads = 4;
  CHECK(run_sweep(spec) == once);
  spec.seed = 8;
  CHECK(run_sweep(spec) != once);
}

TEST_CASE("verification suites") {
  CHECK(is_suite("residue"));
  CHECK_FALSE(is_suite("nope"));
  CHECK(suite_names().size() >= 14);
  VerifyOptions o;
  const auto r = run_suite("residue", o);
  CHECK(r.ok());
  CHECK(r.cases > 1000);
  const auto text = format_report({r}, false);
  CHECK(text == format_report({run_suite("residue", o)}, false));
  CHECK(text.find("suite residue: cases=") == 0);
  CHECK(text.find("total: suites=1") != std::string::npos);
}
