#include <doctest.h>

#include "probcalc/semantics.hpp"

using namespace probcalc;

namespace {

Model ab(const char* ab_, const char* nab, const char* anb, const char* nanb) {
  return model_from_vector({"A", "B"}, {Rational(ab_), Rational(nab), Rational(anb), Rational(nanb)});
}

}  // namespace

TEST_CASE("state names follow the bit convention") {
  std::vector<std::string> l{"A", "B"};
  CHECK(state_name(0, l) == "A&B");
  CHECK(state_name(1, l) == "~A&B");
  CHECK(state_name(2, l) == "A&~B");
  CHECK(parse_state("~A&~B", l) == 3);
  CHECK(parse_state("B&~A", l) == 1);
  CHECK_THROWS(parse_state("A&C", l));
}

TEST_CASE("probabilities of events") {
  Model m = ab("1/6", "1/3", "1/4", "1/4");
  CHECK(prob(m, parse_bool("A")) == Rational(5, 12));
  CHECK(prob(m, parse_bool("A | B")) == Rational(3, 4));
  CHECK(prob(m, parse_bool("T")) == 1);
  Fraction c = eval_fraction(m, parse_term("P(A |: B)"));
  CHECK(c.num / c.den == Rational(1, 3));
  CHECK_THROWS_AS(eval_term(m, parse_term("P(A |: B)")), CondNotEvaluable);
  CHECK(eval_term(m, parse_term("P(A) * P(B) + P(F)")) == Rational(5, 24));
  CHECK_THROWS_AS(prob(m, parse_bool("C")), UnknownLetter);
}

TEST_CASE("conditionals on null events") {
  Model m = ab("1/2", "0", "1/2", "0");
  CHECK_THROWS_AS(eval_term(m, parse_term("P(A |: ~A)")), CondNotEvaluable);
  // Cross-multiplied comparison stays decidable.
  CHECK(satisfies(m, parse_formula("P(B |: ~A) >= P(B |: ~A)")));
}

TEST_CASE("satisfaction of connectives and independence") {
  Model m = ab("1/4", "1/4", "1/4", "1/4");
  CHECK(satisfies(m, parse_formula("indep(A, B)")));
  CHECK(satisfies(m, parse_formula("P(A) = P(B) && !(P(A) > P(B))")));
  CHECK(satisfies(m, parse_formula("P(A) > P(B) => P(F) > P(T)")));
  Model n = ab("1/2", "0", "0", "1/2");
  CHECK_FALSE(satisfies(n, parse_formula("indep(A, B)")));
}

TEST_CASE("validation and normalization") {
  Model m = ab("1", "1", "2", "0");
  CHECK_THROWS(m.validate());
  Model n = m.normalized();
  CHECK(n.total() == 1);
  CHECK(n.weight(2) == Rational(1, 2));
  CHECK(n.support_size() == 3);
  CHECK_NOTHROW(n.validate());
  Model neg = ab("-1/2", "1/2", "1/2", "1/2");
  CHECK_THROWS(neg.validate());
}

TEST_CASE("counting semantics") {
  Model m = model_from_vector({"A", "B"}, {3, 1, 2, 0});
  m.mode = Mode::Count;
  CHECK(eval_counting(m, parse_formula("P(A) > P(B)")));
  CHECK(eval_counting(m, parse_formula("P(A & B) = P(~B) + P(~A)")));
}

TEST_CASE("truth tables and tautologies") {
  auto t = truth_table(parse_bool("A & ~B"), {"A", "B"});
  CHECK(t == std::vector<bool>{false, false, true, false});
  CHECK(is_tautology(parse_bool("A | ~A")));
  CHECK_FALSE(is_tautology(parse_bool("A | B")));
  CHECK(uniform_model({"A", "B", "C"}).weight(5) == Rational(1, 8));
}
