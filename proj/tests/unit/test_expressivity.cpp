#include <doctest.h>

#include "probcalc/expressivity.hpp"

using namespace probcalc;

TEST_CASE("fractions between bounds") {
  auto [n, m] = fraction_between(Rational(1, 3), Rational(1, 2));
  CHECK(n == 2);
  CHECK(m == 5);
  auto [a, b] = fraction_between(0, Rational(1, 10));
  CHECK(Rational(a, b) < Rational(1, 10));
  CHECK(a > 0);
}

TEST_CASE("event expressions denote their masks") {
  std::vector<std::string> l{"A", "B", "C"};
  for (std::uint64_t mask : {0ULL, 1ULL, 0x0FULL, 0x55ULL, 0xFFULL, 0x96ULL}) {
    auto t = truth_table(event_expr(mask, l), l);
    for (std::size_t s = 0; s < t.size(); ++s) CHECK(t[s] == ((mask >> s) & 1));
  }
}

TEST_CASE("hierarchy blocks separate as expected") {
  HierarchyReport r = hierarchy_report();
  CHECK(r.all_ok());
  CHECK(r.rows.size() >= 12);
  for (const auto& row : r.rows) CHECK_MESSAGE(row.ok(), row.block, " ", lang_name(row.lang));
  CHECK_FALSE(r.to_text().empty());
}

TEST_CASE("witnesses hold in exactly one model") {
  for (const auto& b : hierarchy_blocks()) {
    for (const auto& [lang, dist] : b.expect) {
      if (!dist) continue;
      auto w = distinguishable(b.m1, b.m2, lang);
      REQUIRE(w);
      CHECK(satisfies(b.m1, *w) != satisfies(b.m2, *w));
      CHECK(generable(*w, lang));
    }
  }
}

TEST_CASE("identical models are indistinguishable") {
  Model m = uniform_model({"A", "B"});
  DistinguishResult r = distinguish(m, m, Lang::Poly);
  CHECK_FALSE(r.witness);
  CHECK(r.exhaustive);
  CHECK_THROWS_AS(distinguish(m, uniform_model({"A"}), Lang::Comp), std::invalid_argument);
}
