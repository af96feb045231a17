#include <doctest.h>

#include "probcalc/syntax.hpp"

using namespace probcalc;

TEST_CASE("render and parse round trip") {
  for (const char* text : {"P(A) >= P(B)", "P(A & ~B) > P(F)", "P(A |: B) = P(B)", "indep(A, B | C)",
                           "!(P(A) >= P(B)) || P(A) + P(B) = P(T)", "P(A) * P(B) > P(A & B) => P(C) = 0"}) {
    Formula f = parse_formula(text);
    CHECK(parse_formula(render(f)) == f);
  }
}

TEST_CASE("precedence") {
  Formula f = parse_formula("P(A) >= 0 || P(B) >= 0 && P(C) >= 0");
  REQUIRE(f.kind() == Formula::Kind::Or);
  CHECK(f.rhs().kind() == Formula::Kind::And);

  Term t = parse_term("P(A) + P(B) * P(C)");
  REQUIRE(t.kind() == Term::Kind::Sum);
  CHECK(t.rhs().kind() == Term::Kind::Prod);

  BoolExpr e = parse_bool("A | B & ~C");
  REQUIRE(e.kind() == BoolExpr::Kind::Or);
  CHECK(e.rhs().kind() == BoolExpr::Kind::And);
}

TEST_CASE("parenthesized formulas and atoms") {
  CHECK(parse_formula("(P(A) >= P(B))") == parse_formula("P(A) >= P(B)"));
  CHECK(parse_formula("(P(A)) >= (P(B))") == parse_formula("P(A) >= P(B)"));
  CHECK(parse_formula("!(P(A) > 0 && P(B) > 0)").kind() == Formula::Kind::Not);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_formula("P(A) >= P(B");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 11);
  }
  CHECK_THROWS_AS(parse_formula("P(A) ?? P(B)"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(A)"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("classification follows the hierarchy") {
  CHECK(classify(parse_formula("P(A) >= P(B)")) == Lang::Comp);
  CHECK(classify(parse_formula("P(A) + P(B) >= P(C)")) == Lang::Add);
  CHECK(classify(parse_formula("indep(A, B)")) == Lang::Ind);
  CHECK(classify(parse_formula("P(A |: B) >= P(A)")) == Lang::Confirm);
  CHECK(classify(parse_formula("P(A |: C) >= P(B |: C)")) == Lang::SameCond);
  CHECK(classify(parse_formula("P(A |: C) >= P(B |: A)")) == Lang::Cond);
  CHECK(classify(parse_formula("P(A) * P(B) >= P(C) * P(C)")) == Lang::Quad);
  CHECK(classify(parse_formula("P(A) * P(B) * P(C) >= P(C)")) == Lang::Poly);

  CHECK(lang_leq(Lang::Comp, Lang::Poly));
  CHECK(lang_leq(Lang::Ind, Lang::Quad));
  CHECK_FALSE(lang_leq(Lang::Add, Lang::Ind));
  CHECK_FALSE(lang_leq(Lang::Poly, Lang::Quad));
  for (Lang l : {Lang::Comp, Lang::Add, Lang::Ind, Lang::Confirm, Lang::SameCond, Lang::Cond, Lang::Quad, Lang::Poly})
    CHECK(lang_from_name(lang_name(l)) == l);
}

TEST_CASE("confirm view") {
  auto v = confirm_view(Atom::confirm(parse_bool("A"), parse_bool("B"), true));
  REQUIRE(v);
  CHECK(v->cond_over_uncond);
  CHECK(render(v->event) == "A");
  CHECK_FALSE(confirm_view(parse_formula("P(A) >= P(B)").atom_value()));
}

TEST_CASE("letters and atoms") {
  Formula f = parse_formula("P(C & A) >= P(B) && !(P(A) > P(T))");
  CHECK(free_letters(f) == std::vector<std::string>{"A", "B", "C"});
  CHECK(atom_count(f) == 2);
  CHECK(atoms_of(f).size() == 2);
}
