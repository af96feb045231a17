#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probcalc/normalize.hpp"
#include "probcalc/semantics.hpp"

namespace probcalc {

struct ElimStep {
  Var var = 0;
  enum class Kind { Substitute, Combine, Free } kind = Kind::Combine;
  std::size_t rows_before = 0;
  std::size_t rows_after = 0;
};

struct LinResult {
  bool sat = false;
  std::vector<Rational> witness;
  std::vector<ElimStep> trace;
  // Unsat only: the ground row 0 REL rhs that fails.
  LinRow contradiction;
  // Unsat with provenance: multipliers over the rows of the materialized
  // system whose combination is `contradiction`. Inequality multipliers are >= 0.
  std::map<std::size_t, Rational> multipliers;
};

// Rows after eliminating v; the solution set is the projection of s's.
LinSystem fm_eliminate(const LinSystem& s, Var v);

// Projection onto the variables outside `vars`. A failing ground row is
// returned alone; nullopt when the row count exceeds max_rows.
std::optional<LinSystem> fm_project(const LinSystem& s, const std::vector<Var>& vars,
                                   std::size_t max_rows = 100000);

LinResult lin_sat(const LinSystem& s, bool track_provenance = false);
std::string trace_to_text(const LinResult& r, const std::vector<std::string>& var_names);

struct AdditiveResult {
  bool sat = false;
  Model model;                         // Sat only
  std::size_t disjunct = 0;            // index of the satisfied disjunct
  std::size_t disjunct_atoms = 0;      // atomic comparisons in it
  std::vector<LinResult> refutations;  // Unsat: one per disjunct
};

// Formulas in the additive family or same_cond.
AdditiveResult sat_additive(const Formula& f);

// Greedily zeroes states while the disjunct the witness satisfies stays
// feasible. The result has at most (atoms in the disjunct + 1) states.
Model minimize_support(const Formula& f, const Model& witness);

}  // namespace probcalc
