#include <doctest.h>

#include "probcalc/linsolve.hpp"
#include "probcalc/simplex.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace probcalc;

namespace {

LinSystem free_system(std::vector<LinRow> rows, std::size_t n) {
  LinSystem s;
  for (std::size_t i = 0; i < n; ++i) s.var_names.push_back("x" + std::to_string(i));
  s.simplex = false;
  s.rows = std::move(rows);
  return s;
}

}  // namespace

TEST_CASE("Fourier-Motzkin elimination") {
  // x >= 1, y >= x, 2 >= y  projects to 2 >= 1 on no variables.
  LinSystem s = free_system({{{{0, 1}}, RowRel::Geq, 1}, {{{1, 1}, {0, -1}}, RowRel::Geq, 0}, {{{1, -1}}, RowRel::Geq, -2}}, 2);
  LinSystem e = fm_eliminate(s, 0);
  for (const auto& r : e.rows) CHECK(r.coeffs.count(0) == 0);
  auto p = fm_project(s, {0, 1});
  REQUIRE(p);
  for (const auto& r : p->rows) CHECK(r.coeffs.empty());
  CHECK(lin_sat(s).sat);
}

TEST_CASE("strict rows and contradictions") {
  // x > 1, 1 >= x
  LinSystem s = free_system({{{{0, 1}}, RowRel::Gt, 1}, {{{0, -1}}, RowRel::Geq, -1}}, 1);
  LinResult r = lin_sat(s, true);
  CHECK_FALSE(r.sat);
  CHECK(r.contradiction.coeffs.empty());
  CHECK(r.contradiction.rel == RowRel::Gt);
  CHECK_FALSE(r.multipliers.empty());
  for (const auto& [i, m] : r.multipliers) CHECK(m >= 0);
  CHECK_FALSE(trace_to_text(r, s.var_names).empty());
}

TEST_CASE("witnesses satisfy the system") {
  LinSystem s = free_system({{{{0, 1}, {1, 1}}, RowRel::Eq, 3}, {{{0, 1}, {1, -1}}, RowRel::Gt, 0}}, 2);
  LinResult r = lin_sat(s);
  REQUIRE(r.sat);
  CHECK(system_holds(s, r.witness));
}

TEST_CASE("exact simplex") {
  LpProblem p;
  p.nvars = 2;
  p.rows = {{{{0, 1}, {1, 1}}, RowRel::Eq, 1}, {{{0, 1}, {1, -2}}, RowRel::Geq, 0}};
  p.maximize = {{1, 1}};
  LpResult r = lp_solve(p);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.value == Rational(1, 3));
  p.rows.push_back({{{0, 1}}, RowRel::Geq, 2});
  CHECK(lp_solve(p).status == LpResult::Status::Infeasible);
  LpProblem u;
  u.nvars = 1;
  u.maximize = {{0, 1}};
  CHECK(lp_solve(u).status == LpResult::Status::Unbounded);
}

TEST_CASE("additive decisions agree with the vertex oracle") {
  for (const auto& f : gen::additive_corpus(120, 5)) {
    AdditiveResult r = sat_additive(f);
    CHECK(r.sat == oracle::additive_sat(f).has_value());
    if (r.sat) {
      CHECK(satisfies(r.model, f));
      Model m = minimize_support(f, r.model);
      CHECK(satisfies(m, f));
      CHECK(m.support_size() <= r.disjunct_atoms + 1);
    }
  }
}

TEST_CASE("unsat additive formulas") {
  AdditiveResult r = sat_additive(parse_formula("P(A) > P(T)"));
  CHECK_FALSE(r.sat);
  CHECK(r.refutations.size() == 1);
  CHECK_FALSE(sat_additive(parse_formula("P(A) + P(~A) > P(T) || P(A & B) > P(A)")).sat);
  CHECK(sat_additive(parse_formula("P(A |: C) > P(B |: C)")).sat);
}
