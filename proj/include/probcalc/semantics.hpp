#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "probcalc/rational.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

// State index s over letters L: letter j is negated iff bit j of s is set,
// so index 0 is the all-true state. For {A,B} the order is A&B, ~A&B, A&~B, ~A&~B.
using StateIndex = std::uint64_t;

inline bool letter_true(StateIndex s, std::size_t j) { return ((s >> j) & 1u) == 0; }

std::string state_name(StateIndex s, const std::vector<std::string>& letters);
StateIndex parse_state(const std::string& key, const std::vector<std::string>& letters);

enum class Mode { Prob, Count };

struct Model {
  std::vector<std::string> letters;
  std::map<StateIndex, Rational> weights;  // absent states weigh 0
  Mode mode = Mode::Prob;

  Rational weight(StateIndex s) const;
  Rational total() const;
  std::size_t support_size() const;
  Model normalized() const;
  std::size_t state_count() const { return std::size_t{1} << letters.size(); }
  // Throws if weights are negative, or do not sum to 1 in probability mode.
  void validate() const;
};

bool operator==(const Model& a, const Model& b);

Model model_from_vector(const std::vector<std::string>& letters, const std::vector<Rational>& w);
std::vector<Rational> dense_weights(const Model& m);

class LetterIndex {
 public:
  explicit LetterIndex(const std::vector<std::string>& letters);
  std::size_t at(const std::string& name) const;
  bool contains(const std::string& name) const { return idx_.count(name) > 0; }

 private:
  std::unordered_map<std::string, std::size_t> idx_;
};

bool holds(const BoolExpr& e, StateIndex s, const LetterIndex& li);
// Bit vector over all 2^n states of `letters`.
std::vector<bool> truth_table(const BoolExpr& e, const std::vector<std::string>& letters);
bool is_tautology(const BoolExpr& e);

struct UnknownLetter : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CondNotEvaluable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongFragment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational prob(const Model& m, const BoolExpr& b);
Rational eval_term(const Model& m, const Term& t);

// Terms as num/den with P(a |: b) = P(a & b)/P(b); comparisons cross-multiply.
struct Fraction {
  Rational num, den;
};
Fraction eval_fraction(const Model& m, const Term& t);

bool satisfies(const Model& m, const Atom& a);
bool satisfies(const Model& m, const Formula& f);

// Unnormalized comparison of integer counts; additive formulas only.
bool eval_counting(const Model& m, const Formula& f);

Model uniform_model(const std::vector<std::string>& letters);

}  // namespace probcalc
