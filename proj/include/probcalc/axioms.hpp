#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "probcalc/polysolve.hpp"
#include "probcalc/semantics.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

struct SchemaArgs {
  std::vector<BoolExpr> bools;
  std::vector<Term> terms;
  std::optional<Formula> context;   // Repl: the formula whose occurrences get replaced
  std::uint64_t positions = ~0ULL;  // Repl: bit i replaces the i-th occurrence
};

struct Schema {
  std::string name;
  std::string group;  // base, add, lemma, comp, poly
  std::size_t bools = 0;
  std::size_t terms = 0;
  Lang lang = Lang::Comp;  // language the term arguments range over
  bool context = false;
  std::function<Formula(const SchemaArgs&)> build;
};

// Every named schema, with FinCan:1..4 standing in for the family.
const std::vector<Schema>& schema_table();
// Looks up a name; "FinCan:n" works for any n >= 1. Throws std::invalid_argument.
Schema find_schema(const std::string& name);
// Throws std::invalid_argument on arity mismatch, or when Dist gets a
// non-tautological β → α.
Formula instantiate(const std::string& name, const SchemaArgs& args);
Formula instantiate(const Schema& s, const SchemaArgs& args);

// P(⋁ balanced state descriptions) ≈ P(⊤): in every state as many αs as βs hold.
Formula balanced_antecedent(const std::vector<BoolExpr>& as, const std::vector<BoolExpr>& bs);
// Replaces the occurrences of `a` picked by `positions` with `b`, in pre-order.
Formula replace_terms(const Formula& f, const Term& a, const Term& b, std::uint64_t positions);

struct Validity {
  enum class Kind { Valid, Countermodel, Unknown } kind = Kind::Unknown;
  Model countermodel;
  PolyVerdict verdict;  // the verdict on the negation
};
const char* validity_name(Validity::Kind k);
Validity validity(const Formula& f, const PolyBudget& b = {});

// Random arguments suitable for the schema over `letters`.
SchemaArgs random_args(const Schema& s, const std::vector<std::string>& letters, std::mt19937_64& rng);
BoolExpr random_bool(const std::vector<std::string>& letters, std::mt19937_64& rng);
Term random_term(Lang lang, const std::vector<std::string>& letters, std::mt19937_64& rng);

// Probability models over `letters` with rational weights of denominator at
// most max_den, without duplicates.
std::vector<Model> small_models(const std::vector<std::string>& letters, int max_den);

struct FuzzHit {
  Formula instance;
  Model model;
};
// Random instances against random small models; a hit is a falsified instance.
std::optional<FuzzHit> soundness_fuzz(const Schema& s, std::size_t trials, std::uint64_t seed,
                                      const std::vector<std::string>& letters = {"A", "B"}, int max_den = 12);
std::optional<FuzzHit> soundness_fuzz(const std::string& name, std::size_t trials, std::uint64_t seed,
                                      const std::vector<std::string>& letters = {"A", "B"}, int max_den = 12);
// `instances` random instances, each against every model of small_models.
std::optional<FuzzHit> exhaustive_check(const Schema& s, std::size_t instances, std::uint64_t seed,
                                        const std::vector<std::string>& letters, int max_den);

// φ^A (every ε ≿ ζ becomes (ε∧A) ≿ (ζ∧A)) and π = ⋀_δ P(δ∧A) ≈ P(δ∧¬A) over
// the state descriptions δ of φ's letters. Comparative formulas only; throws
// WrongFragment otherwise and std::invalid_argument if A already occurs.
struct Relativized {
  Formula body;
  Formula pi;
};
Relativized relativize(const Formula& f, const std::string& fresh);

// Extends m by a fresh letter: α-states split evenly, ¬α-states go wholly to A.
Model polarize_model(const Model& m, const BoolExpr& alpha, const std::string& fresh);

}  // namespace probcalc
