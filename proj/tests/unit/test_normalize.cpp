#include <doctest.h>

#include "probcalc/normalize.hpp"

using namespace probcalc;

TEST_CASE("dnf splits disjunctions and pushes negation") {
  auto d = dnf(parse_formula("(P(A) >= P(B) || P(B) > P(A)) && P(C) = 0"));
  CHECK(d.size() == 2);
  for (const auto& c : d) CHECK(c.size() == 2);
  // Negated comparisons flip into positive ones.
  auto n = dnf(parse_formula("!(P(A) >= P(B))"));
  REQUIRE(n.size() == 1);
  REQUIRE(n[0].size() == 1);
  CHECK(n[0][0].positive);
  CHECK(n[0][0].atom.rel == Rel::Gt);
  // Negated independence stays a negative literal.
  auto i = dnf(parse_formula("!indep(A, B)"));
  REQUIRE(i.size() == 1);
  CHECK_FALSE(i[0][0].positive);
}

TEST_CASE("event polynomials over states") {
  std::vector<std::string> l{"A", "B"};
  Poly p = event_poly(parse_bool("A"), l);
  CHECK(p == Poly::var(0) + Poly::var(2));
  CHECK(event_poly(parse_bool("T"), l).size() == 4);
  CHECK(event_poly(parse_bool("F"), l).is_zero());
  auto [num, den] = term_fraction(parse_term("P(A |: B)"), l);
  CHECK(num == Poly::var(0));
  CHECK(den == Poly::var(0) + Poly::var(1));
}

TEST_CASE("additive conjuncts expand linearly") {
  auto d = dnf(parse_formula("P(A) + P(B) >= P(T) && P(A & B) = 0"));
  Expansion e = expand(d.at(0), {"A", "B"});
  CHECK(e.linear);
  CHECK(e.lin.nvars() == 4);
  CHECK(e.lin.simplex);
  std::vector<Rational> x{0, Rational(1, 2), Rational(1, 2), 0};
  CHECK(system_holds(e.lin, x));
  CHECK_FALSE(system_holds(e.lin, std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
  CHECK(materialize_simplex(e.lin).rows.size() == e.lin.rows.size() + 5);
}

TEST_CASE("products expand to polynomial rows") {
  auto d = dnf(parse_formula("P(A) * P(B) = P(A & B)"));
  Expansion e = expand(d.at(0), {"A", "B"});
  CHECK_FALSE(e.linear);
  REQUIRE(e.poly.rows.size() == 1);
  CHECK(e.poly.rows[0].p.degree() == 2);
  CHECK(system_holds(e.poly, std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
  CHECK_FALSE(to_linear(e.poly));
}

TEST_CASE("system text round trip") {
  auto d = dnf(parse_formula("P(A) * P(B) > P(A & B) && P(A) >= P(~A)"));
  Expansion e = expand(d.at(0), {"A", "B"});
  PolySystem back = parse_poly_system(to_text(e.poly));
  REQUIRE(back.rows.size() == e.poly.rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    CHECK(back.rows[i].p == e.poly.rows[i].p);
    CHECK(back.rows[i].rel == e.poly.rows[i].rel);
  }
  LinSystem lin;
  lin.var_names = {"x", "y"};
  lin.simplex = false;
  lin.rows.push_back({{{0, 1}, {1, 2}}, RowRel::Gt, 3});
  LinSystem lback = parse_lin_system(to_text(lin));
  REQUIRE(lback.rows.size() == 1);
  CHECK(lback.rows[0].coeffs == lin.rows[0].coeffs);
  CHECK(lback.rows[0].rhs == 3);
}
