#pragma once

#include <map>
#include <vector>

#include "probcalc/normalize.hpp"

namespace probcalc {

// Exact dense two-phase simplex with Bland's rule. Rows use Eq or Geq only;
// variables are nonnegative unless marked free.
struct LpProblem {
  std::size_t nvars = 0;
  std::vector<LinRow> rows;
  std::vector<bool> free_var;             // empty means none free
  std::map<Var, Rational> maximize;       // empty means feasibility only
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value = 0;
};

LpResult lp_solve(const LpProblem& p);

}  // namespace probcalc
