#include <doctest.h>

#include "probcalc/polysolve.hpp"

using namespace probcalc;

TEST_CASE("Farkas combination is a certificate") {
  std::vector<Poly> F, G{Poly::var(0), -Poly::var(0) - Poly(1)}, H;
  PsatzCertificate c;
  c.cone = {{Rational(1), {0}, Poly(1)}, {Rational(1), {1}, Poly(1)}};
  CHECK(psatz_verify(c, F, G, H));
  c.cone[0].coeff = 2;
  CHECK_FALSE(psatz_verify(c, F, G, H));
  c.cone[0].coeff = -1;
  CHECK_FALSE(psatz_verify(c, F, G, H));
}

TEST_CASE("ideal members") {
  // x = 1 and x = 2: (x - 1) - (x - 2) - 1 = 0.
  std::vector<Poly> F, G, H{Poly::var(0) - Poly(1), Poly::var(0) - Poly(2)};
  PsatzCertificate c;
  c.ideal = {{Poly(1), 0}, {Poly(-1), 1}};
  c.cone = {{Rational(1), {}, Poly(-1)}};
  CHECK_FALSE(psatz_verify(c, F, G, H));
  auto found = psatz_search(F, G, H, 1);
  REQUIRE(found);
  CHECK(psatz_verify(*found, F, G, H));
}

TEST_CASE("search refutes x^2 > x on the simplex") {
  PolySystem s;
  s.var_names = {"x", "y"};
  s.rows.push_back({Poly::var(0) * Poly::var(0) - Poly::var(0), RowRel::Gt});
  PsatzInput in = psatz_input(s);
  CHECK_FALSE(in.F.empty());
  CHECK_FALSE(in.H.empty());
  auto c = psatz_search(in.F, in.G, in.H, 3);
  REQUIRE(c);
  CHECK(psatz_verify(*c, in.F, in.G, in.H));
  CHECK_FALSE(psatz_to_text(*c, s.var_names).empty());
}

TEST_CASE("satisfiable systems have no certificate") {
  std::vector<Poly> F{Poly::var(0)}, G{Poly::var(0)}, H;
  CHECK_FALSE(psatz_search(F, G, H, 2));
}
