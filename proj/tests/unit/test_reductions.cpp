#include <doctest.h>

#include <cmath>

#include "probcalc/io.hpp"
#include "probcalc/reductions.hpp"
#include "support/generators.hpp"

using namespace probcalc;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(PROBCALC_FIXTURES) + "/" + name); }

}  // namespace

TEST_CASE("same-condition formulas drop the condition") {
  Formula f = parse_formula("P(A |: C) > P(B |: C) && P(A & B |: C) >= P(F |: C)");
  Formula g = same_cond_to_comp(f);
  CHECK(generable(g, Lang::Comp));
  CHECK(render(g) == "P(A & C) > P(B & C) && P(A & B & C) >= P(F & C)");
  CHECK_THROWS(same_cond_to_comp(parse_formula("P(A |: C) > P(B |: A)")));
  for (const auto& h : gen::same_cond_corpus(20, 4)) CHECK(generable(same_cond_to_comp(h), Lang::Comp));
}

TEST_CASE("ETR text") {
  EtrSystem s = parse_etr(fixture("inverse.etr"));
  CHECK(s.n == 2);
  REQUIRE(s.constraints.size() == 1);
  CHECK(s.constraints[0].kind == EtrConstraint::Kind::Inv);
  EtrSystem back = parse_etr(etr_to_text(s));
  CHECK(back.n == s.n);
  CHECK(back.constraints.size() == s.constraints.size());
  CHECK_THROWS_AS(parse_etr("x1 - x2 = x3"), ParseError);
  CHECK(etr_holds(s, {Rational(1, 2), Rational(2)}));
  CHECK_FALSE(etr_holds(s, {Rational(1), Rational(2)}));
  CHECK(etr_to_poly(s).box.size() == 2);
}

TEST_CASE("planted instances hold") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EtrInstance i = random_etr(3, 3, true, seed);
    REQUIRE(i.planted.size() == 3);
    CHECK(etr_holds(i.system, i.planted));
  }
}

TEST_CASE("partitions have equal cells") {
  Partition p{5, {"q0", "q1", "q2"}};
  Model m = uniform_model(p.letters);
  for (int c = 0; c < 5; ++c) CHECK(prob(m, p.cell(c)) > 0);
  BoolExpr all = BoolExpr::bot();
  for (int c = 0; c < 5; ++c) all = BoolExpr::disj(all, p.cell(c));
  CHECK(is_tautology(all));
}

TEST_CASE("inverse ETR encodes into independence") {
  EtrSystem s = parse_etr(fixture("inverse.etr"));
  IndEncoding enc = etr_inverse_to_ind(s);
  CHECK(generable(enc.formula, Lang::Ind));
  CHECK(enc.constant.cells == 16);
  // Linear in n^2 + m.
  CHECK(enc.atoms <= 40 * (4 + s.constraints.size()));
  Model m = transport_forward(enc, {Rational(2, 3), Rational(3, 2)});
  CHECK(satisfies(m, enc.formula));
  CHECK(transport_backward(enc, m) == std::vector<Rational>{Rational(2, 3), Rational(3, 2)});
  Model off = transport_forward(enc, {Rational(1), Rational(3, 2)});
  CHECK_FALSE(satisfies(off, enc.formula));
}

TEST_CASE("sums encode too") {
  EtrSystem s = parse_etr("vars 3\nx1 + x2 = x3\n");
  IndEncoding enc = etr_inverse_to_ind(s);
  Model m = transport_forward(enc, {Rational(1, 2), Rational(1), Rational(3, 2)});
  CHECK(satisfies(m, enc.formula));
}

TEST_CASE("polynomial formulas to ETR sentences") {
  EtrSentence e = poly_to_etr(parse_formula("P(A & B) = P(~(A & B)) && P(A |: B) = P(B)"));
  REQUIRE(e.systems.size() == 1);
  CHECK(e.systems[0].nvars() == 4);
  CHECK(e.smtlib.find("(set-logic QF_NRA)") != std::string::npos);
  CHECK(e.smtlib.find("(check-sat)") != std::string::npos);
  CHECK(e.event_count >= 2);
}

TEST_CASE("support guessing") {
  CHECK(support_candidates(4, 2).size() == 10);
  PolySystem s;
  s.var_names = {"a", "b", "c"};
  s.rows.push_back({Poly::var(0) - Poly::var(2), RowRel::Gt});
  PolySystem r = restrict_to_support(s, {0, 2});
  CHECK(r.nvars() == 2);
  SupportVerdict v = sat_by_support(parse_formula("P(A & B) = P(~(A & B)) && P(A |: B) = P(B)"));
  CHECK(v.kind == PolyVerdict::Kind::SatNumeric);
  CHECK(v.support.size() <= 3);
  CHECK(sat_by_support(parse_formula("P(A) * P(A) > P(A)")).kind == PolyVerdict::Kind::UnsatCertified);
}
