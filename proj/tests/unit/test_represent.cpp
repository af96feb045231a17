#include <doctest.h>

#include <fstream>
#include <sstream>

#include "probcalc/io.hpp"
#include "probcalc/represent.hpp"
#include "support/oracles.hpp"

using namespace probcalc;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(PROBCALC_FIXTURES) + "/" + name); }

}  // namespace

TEST_CASE("subset text") {
  CHECK(subset_to_text(0b101) == "{0,2}");
  CHECK(subset_to_text(0) == "{}");
  CHECK(parse_subset("{0,2}", 3) == 0b101);
  CHECK(parse_subset("{ }", 3) == 0);
  CHECK_THROWS_AS(parse_subset("{3}", 3), ParseError);
  CHECK_THROWS_AS(parse_subset("0,1", 3), ParseError);
}

TEST_CASE("preorder closure") {
  Preorder p(3);
  p.relate(0, 1, CmpRel::Gt);
  p.relate(1, 2, CmpRel::Geq);
  p.close();
  CHECK(p.gt(0, 2));
  CHECK(p.transitive());
  CHECK_FALSE(p.total());
  p.relate(2, 0, CmpRel::Geq);
  p.close();
  CHECK_FALSE(p.consistent());
  Preorder v = Preorder::from_values(std::vector<int>{2, 1, 1});
  CHECK(v.total());
  CHECK(v.classes().size() == 2);
}

TEST_CASE("orders from measures are representable") {
  std::vector<Rational> w{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  CompOrder o = CompOrder::from_measure(w);
  CHECK(all_pass(check_definetti_axioms(o)));
  CHECK(check_fincan(o, 3).ok);
  RepresentResult r = representable(o);
  REQUIRE(r.yes);
  CHECK(measure_reproduces(o, r.measure));
  CHECK(oracle::measure_matches(o, r.measure));
}

TEST_CASE("the five-atom order is quasi-additive but not representable") {
  CompOrder o = order_from_json(fixture("order5.json"));
  CHECK(o.atoms == 5);
  CHECK(all_pass(check_definetti_axioms(o)));
  RepresentResult r = representable(o);
  REQUIRE_FALSE(r.yes);
  CHECK(certificate_balanced(r.certificate, 5));
  CHECK(verify_certificate(r.certificate, o));
  CHECK(oracle::balanced_and_directed(r.certificate, o));
  SkResult sk = check_sk(o, 4, 2);
  CHECK(sk.violated);
  CHECK_FALSE(certificate_to_text(r.certificate).empty());
}

TEST_CASE("tampered certificates are rejected") {
  CompOrder o = order_from_json(fixture("order5.json"));
  RepresentResult r = representable(o);
  REQUIRE_FALSE(r.yes);
  BalancedCertificate c = r.certificate;
  c.entries.at(0).mult += 1;
  CHECK_FALSE(verify_certificate(c, o));
}

TEST_CASE("degenerate orders get NonDeg or NonTriv certificates") {
  // {} > {0}
  CompOrder o = CompOrder::from_comparisons(2, {{0, 1, CmpRel::Gt}, {1, 2, CmpRel::Geq}, {2, 1, CmpRel::Geq}});
  RepresentResult r = representable(o, true);
  CHECK_FALSE(r.yes);
  CHECK(verify_certificate(r.certificate, o));
  CHECK_THROWS_AS(representable(CompOrder::from_comparisons(2, {{1, 2, CmpRel::Gt}})), std::invalid_argument);
}

TEST_CASE("partial orders extend when possible") {
  CompOrder o = CompOrder::from_comparisons(3, {{1, 2, CmpRel::Gt}, {2, 4, CmpRel::Gt}});
  RepresentResult r = representable(o, true);
  REQUIRE(r.yes);
  CHECK(r.measure[0] > r.measure[1]);
  CHECK(r.measure[1] > r.measure[2]);
}
