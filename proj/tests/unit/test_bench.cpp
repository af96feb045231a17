#include <doctest.h>

#include <sstream>

#include "probcalc/bench.hpp"

using namespace probcalc;

TEST_CASE("generated formulas stay in their language") {
  for (Lang l : {Lang::Comp, Lang::Add, Lang::Ind, Lang::Confirm, Lang::SameCond, Lang::Cond, Lang::Quad, Lang::Poly}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Formula f = generate(l, 1 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 5), seed);
      CHECK(generable(f, l));
      CHECK(generable(f, classify(f)));
      CHECK(atom_count(f) == 1 + seed % 5);
    }
  }
  CHECK(generate(Lang::Quad, 3, 4, 9) == generate(Lang::Quad, 3, 4, 9));
}

TEST_CASE("plan parsing") {
  auto p = parse_plan("# lang letters atoms count timeout seed\nadd 2 3 5 1000 7\n\npoly 1 1 2 500 3 # tail\n");
  REQUIRE(p.size() == 2);
  CHECK(p[0].lang == Lang::Add);
  CHECK(p[0].count == 5);
  CHECK(p[1].timeout_ms == 500);
  CHECK_THROWS(parse_plan("add 2 3\n"));
  CHECK_THROWS(parse_plan("nolang 1 1 1 1 1\n"));
}

TEST_CASE("bench rows and CSV") {
  auto rows = run_bench(parse_plan("comp 2 2 4 2000 1\nind 2 1 2 2000 5\n"), 2);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == i);
    CHECK(rows[i].verdict != "unknown");
  }
  CHECK(rows[5].seed == 6);
  std::string csv = bench_to_csv(rows);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == bench_csv_header());
  std::size_t n = 0;
  while (std::getline(is, line)) n += !line.empty();
  CHECK(n == 6);
}
