#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftpd/rank.hpp"
#include "shiftpd/serialize.hpp"

namespace shiftpd {

// A parameter sweep over one polynomial family.
//
//   {"family": "nw", "grids": {"q": [2, 3], "d": {"from": 3, "to": 4}, "k": [1, 2]},
//    "measures": ["pd"], "seed": 42, "budget": 100000000, "threads": 4}
//
// Families and the grid parameters they need:
//   nw (q, d, k), imm (n, d), word (h, d, k), psigma (n, d, delta),
//   quadpower (n, e), monomial (n), product (n, d, t: a random product of t
//   homogeneous factors).
// Measures: pd, sp (uses l, default 0), app (uses n0; sampled maps).
struct SweepSpec {
  std::string family;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> grids;  // in column order
  std::vector<std::string> measures;
  std::uint64_t seed = 42;
  Budget budget{};
  unsigned threads = 1;
  std::uint32_t app_trials = 3;
  bool timings = false;                // adds runtime_ms (breaks byte stability)
  std::optional<std::string> output;   // CSV path; the CLI writes stdout when absent
};

SweepSpec parse_sweep_spec(const Json& j);

// Parameter columns, in the order grid points are enumerated (last fastest).
const std::vector<std::string>& sweep_parameters();

// family,q,n,d,k,h,e,delta,t,l,n0,nvars,terms,pd,sp,app,ambient_sp,
// product_sp_bound,residue,status[,runtime_ms]
std::vector<std::string> sweep_columns(bool timings);

// One row per grid point, in grid order. Rows whose computation hits the
// budget get status "budget-exceeded"; invalid parameter combinations get
// "invalid". An empty grid gives the header alone.
std::string run_sweep(const SweepSpec& spec);

}  // namespace shiftpd
