#include <doctest.h>

#include "probcalc/io.hpp"
#include "probcalc/represent.hpp"

using namespace probcalc;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(PROBCALC_FIXTURES) + "/" + name); }

BilinearMatrix outer(Rational p, Rational q) { return {{{p * p, p * q}, {q * p, q * q}}}; }

}  // namespace

TEST_CASE("bilinear matrices") {
  BilinearMatrix m = outer(Rational(1, 3), Rational(2, 3));
  CHECK(m.rank() == 1);
  CHECK(m.symmetric());
  CHECK(m.apply(0b11, 0b11) == 1);
  CHECK(m.apply(0b01, 0b10) == Rational(2, 9));
  CHECK(m.apply(0, 0b11) == 0);
}

TEST_CASE("product measures pass the axioms") {
  QuadOrder q = order_from_matrix(outer(Rational(1, 4), Rational(3, 4)));
  CHECK(all_pass(quad_check_axioms(q)));
  QuadN2Result r = quad_representable_n2(q);
  REQUIRE(r.yes);
  CHECK(quad_regions_n2().at(r.region).sample.to_double() > 0);
}

TEST_CASE("nine regions on two atoms") {
  const auto& rs = quad_regions_n2();
  REQUIRE(rs.size() == 9);
  CHECK(rs.back().degenerate);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    QuadN2Result r = quad_representable_n2(rs[i].order);
    CHECK(r.yes);
    CHECK(r.region == i);
    CHECK_FALSE(rs[i].description().empty());
  }
  CHECK(quad_sweep_n2(3).size() == 9);
}

TEST_CASE("golden ratio boundary") {
  Surd5 phi{Rational(1, 2), Rational(1, 2)};
  CHECK(phi * phi == phi + Surd5{1, 0});
  CHECK(phi.sign() == 1);
  CHECK(Surd5{2, 0} >= phi);
  CHECK(phi.to_string() == "1/2 + 1/2*sqrt(5)");
}

TEST_CASE("rank 1 and rank 2 matrices can induce one order") {
  QuadOrder phi = quad_order_from_json(fixture("m_phi.json"));
  QuadOrder psi = quad_order_from_json(fixture("m_psi.json"));
  CHECK(phi.rel == psi.rel);
  CHECK(matrix_from_json(fixture("m_phi.json")).rank() == 1);
  CHECK(matrix_from_json(fixture("m_psi.json")).rank() == 2);
}

TEST_CASE("orders violating the axioms are rejected") {
  QuadOrder q = order_from_matrix(outer(Rational(1, 2), Rational(1, 2)));
  // Put (∅,∅) above everything.
  std::vector<int> v(16, 0);
  v[0] = 1;
  QuadOrder bad{2, Preorder::from_values(v)};
  CHECK_FALSE(all_pass(quad_check_axioms(bad)));
  CHECK_FALSE(quad_representable_n2(bad).yes);
  CHECK_THROWS_AS(quad_representable_n2(QuadOrder{1, Preorder(4)}), std::invalid_argument);
  CHECK(all_pass(quad_check_axioms(q)));
}
