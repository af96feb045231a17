#include <doctest.h>

#include <cmath>

#include "probcalc/polysolve.hpp"

using namespace probcalc;

TEST_CASE("polynomial arithmetic") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.degree() == 2);
  CHECK(p.eval(std::vector<Rational>{3, 2}) == 5);
  CHECK(p.derivative(0) == Rational(2) * x);
  CHECK(p.substitute(1, x).is_zero());
  CHECK((x + 1).pow(3).coeff({{0, 1}}) == 3);
  CHECK(p.to_string({"x", "y"}) == "1*x*x + -1*y*y");
}

TEST_CASE("interval enclosures contain the range") {
  Poly x = Poly::var(0);
  Poly p = x * x - x;
  Interval i = enclose(p, {{0, 1}});
  CHECK(i.lo <= Rational(-1, 4));
  CHECK(i.hi >= 0);
  Interval j = enclose(p, {{2, 3}});
  CHECK(j.lo >= 2);
  CHECK(j.hi <= 6);
}

TEST_CASE("the intro formula forces an irrational value") {
  PolyVerdict v = decide(parse_formula("P(A & B) = P(~(A & B)) && P(A |: B) = P(B)"));
  REQUIRE(v.kind == PolyVerdict::Kind::SatNumeric);
  CHECK(std::abs(numeric_prob(v, BoolExpr::letter("B")) - std::sqrt(0.5)) < 1e-6);
  CHECK(v.residual <= 1e-9);
}

TEST_CASE("rational witnesses are checked exactly") {
  PolyVerdict v = decide(parse_formula("indep(A, B) && P(A) > P(~A) && P(B) > P(A)"));
  REQUIRE(v.kind == PolyVerdict::Kind::SatRational);
  CHECK(satisfies(v.model, parse_formula("indep(A, B) && P(A) > P(~A) && P(B) > P(A)")));
}

TEST_CASE("nonlinear unsat gets a certificate") {
  // P(A)^2 > P(A) has no solution in [0,1].
  PolyVerdict v = decide(parse_formula("P(A) * P(A) > P(A)"));
  REQUIRE(v.kind == PolyVerdict::Kind::UnsatCertified);
  REQUIRE_FALSE(v.proofs.empty());
  for (const auto& pr : v.proofs) {
    if (pr.kind == UnsatProof::Kind::PruneTree) CHECK(replay_prune_tree(bp_problem(pr.system), pr.tree));
    if (pr.kind == UnsatProof::Kind::Psatz) {
      PsatzInput in = psatz_input(pr.system);
      CHECK(psatz_verify(pr.psatz, in.F, in.G, in.H));
    }
  }
}

TEST_CASE("branch and prune on a box") {
  PolySystem s;
  s.var_names = {"x"};
  s.simplex = false;
  s.box = {{0, 2}};
  s.rows.push_back({Poly::var(0) * Poly::var(0) - Poly(5), RowRel::Geq});
  BpResult r = branch_and_prune(s);
  REQUIRE(r.kind == BpResult::Kind::UnsatCertified);
  CHECK(replay_prune_tree(bp_problem(s), r.tree));
  CHECK_FALSE(prune_tree_to_text(r.tree).empty());
  // A tampered tree no longer tiles or no longer refutes.
  PruneTree bad = r.tree;
  bad.root.box[0].hi = 3;
  CHECK_FALSE(replay_prune_tree(bp_problem(s), bad));
}

TEST_CASE("solve_system finds points") {
  PolySystem s;
  s.var_names = {"x", "y"};
  s.simplex = false;
  s.box = {{0, 2}, {0, 2}};
  s.rows.push_back({Poly::var(0) * Poly::var(1) - Poly(1), RowRel::Eq});
  s.rows.push_back({Poly::var(0) - Poly::var(1), RowRel::Gt});
  SystemVerdict v = solve_system(s);
  REQUIRE(v.kind == PolyVerdict::Kind::SatRational);
  CHECK(system_holds(s, v.point));
  NumericPoint m = measure_point(s, {std::sqrt(2.0), std::sqrt(0.5)});
  CHECK(m.residual < 1e-12);
  CHECK(m.margin > 0);
}

TEST_CASE("presolve keeps the nonlinear core small") {
  Formula f = parse_formula("P(A & B) = P(~(A & B)) && P(A |: B) = P(B) && P(C) >= P(D) && P(D & E) > P(F)");
  auto c = dnf(f).at(0);
  Presolved p = presolve(c, free_letters(f));
  CHECK_FALSE(p.contradiction);
  CHECK(p.kept.size() < free_letters(f).size());
  PolyVerdict v = decide(f);
  CHECK(v.kind == PolyVerdict::Kind::SatNumeric);
}

TEST_CASE("budget timeouts yield unknown or a verdict, never a crash") {
  PolyBudget b;
  b.timeout_ms = 1;
  PolyVerdict v = decide(parse_formula("P(A) * P(B) * P(C) = P(A & B & C) && P(A) * P(A) = P(B |: C)"), b);
  CHECK(std::string(verdict_name(v.kind)).size() > 0);
}
