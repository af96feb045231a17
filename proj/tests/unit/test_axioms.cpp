#include <doctest.h>

#include "probcalc/axioms.hpp"

using namespace probcalc;

TEST_CASE("schema table") {
  const auto& t = schema_table();
  CHECK(t.size() >= 30);
  CHECK(find_schema("FinCan:6").bools == 12);
  CHECK_THROWS_AS(find_schema("NoSuchSchema"), std::invalid_argument);
  CHECK_THROWS_AS(find_schema("FinCan:0"), std::invalid_argument);
}

TEST_CASE("instantiation checks arity and side conditions") {
  SchemaArgs a;
  a.bools = {parse_bool("A | B"), parse_bool("A")};
  Formula d = instantiate("Dist", a);
  CHECK(render(d) == "P(A | B) >= P(A)");
  a.bools = {parse_bool("A"), parse_bool("B")};
  CHECK_THROWS_AS(instantiate("Dist", a), std::invalid_argument);
  CHECK_THROWS_AS(instantiate("Add", SchemaArgs{}), std::invalid_argument);
}

TEST_CASE("axiom instances are valid") {
  std::mt19937_64 rng(3);
  for (const char* name : {"Add", "Quasi", "Comm", "NonDeg", "FinCan:2", "Comm·"}) {
    Schema s = find_schema(name);
    for (int i = 0; i < 3; ++i) {
      Formula f = instantiate(s, random_args(s, {"A", "B"}, rng));
      CHECK_MESSAGE(validity(f).kind == Validity::Kind::Valid, name, ": ", render(f));
    }
  }
}

TEST_CASE("invalid formulas get countermodels") {
  Formula f = parse_formula("P(A) >= P(B)");
  Validity v = validity(f);
  REQUIRE(v.kind == Validity::Kind::Countermodel);
  CHECK_FALSE(satisfies(v.countermodel, f));
  CHECK(std::string(validity_name(v.kind)) == "countermodel");
}

TEST_CASE("soundness fuzzing finds nothing on sound schemas") {
  for (const auto& s : schema_table()) {
    if (s.group == "lemma") continue;
    CHECK_MESSAGE(!soundness_fuzz(s, 200, 7), s.name);
  }
}

TEST_CASE("the fuzzer catches a broken schema") {
  Schema bad = find_schema("Dist");
  bad.name = "Broken";
  bad.build = [](const SchemaArgs& x) { return Formula::atom(Atom::gt(Term::basic(x.bools[0]), Term::basic(x.bools[1]))); };
  CHECK(soundness_fuzz(bad, 200, 1));
}

TEST_CASE("balanced antecedents") {
  Formula f = balanced_antecedent({parse_bool("A"), parse_bool("B")}, {parse_bool("A & B"), parse_bool("A | B")});
  CHECK(validity(f).kind == Validity::Kind::Valid);
}

TEST_CASE("term replacement by position") {
  Formula f = parse_formula("P(A) >= P(B) && P(A) > P(F)");
  Formula g = replace_terms(f, parse_term("P(A)"), parse_term("P(C)"), 0b10);
  CHECK(render(g) == "P(A) >= P(B) && P(C) > P(F)");
}

TEST_CASE("small models are distinct distributions") {
  auto ms = small_models({"A"}, 3);
  // Weights (w, 1 - w) with w in {0, 1/3, 1/2, 2/3, 1}.
  CHECK(ms.size() == 5);
  for (const auto& m : ms) CHECK(m.total() == 1);
}

TEST_CASE("relativization and polarization") {
  Formula f = parse_formula("P(A) > P(B)");
  Relativized r = relativize(f, "Z");
  CHECK(render(r.body) == "P(A & Z) > P(B & Z)");
  CHECK(atom_count(r.pi) == 4);
  CHECK_THROWS_AS(relativize(f, "A"), std::invalid_argument);
  CHECK_THROWS_AS(relativize(parse_formula("P(A) + P(B) > P(T)"), "Z"), WrongFragment);

  Model m = model_from_vector({"A", "B"}, {Rational(1, 2), Rational(1, 4), Rational(1, 4), 0});
  Model p = polarize_model(m, parse_bool("A"), "Z");
  CHECK(p.total() == 1);
  CHECK(prob(p, parse_bool("A & Z")) == prob(p, parse_bool("A & ~Z")));
  CHECK(prob(p, parse_bool("~A & Z")) == Rational(1, 4));
}
