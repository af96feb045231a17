#pragma once

#include <optional>
#include <vector>

#include "probcalc/represent.hpp"
#include "probcalc/semantics.hpp"
#include "probcalc/syntax.hpp"

namespace oracle {

using probcalc::Formula;
using probcalc::Rational;

// Truth assignments to the atoms of f (in atoms_of order) that make the
// Boolean skeleton true, found by trying all 2^k of them.
std::vector<std::vector<bool>> skeleton_models(const Formula& f);

// Satisfiability of an additive formula by vertex enumeration: for each
// skeleton model, maximize a common slack t <= 1 for the strict rows over the
// simplex by trying every basis. Returns a witness (state weights) when sat.
std::optional<std::vector<Rational>> additive_sat(const Formula& f);

// Each entry a >= b (or a > b when strict) holds in the order, at least one is
// strict, and the indicator sums of both sides agree on every atom.
bool balanced_and_directed(const probcalc::BalancedCertificate& c, const probcalc::CompOrder& o);

// a >= b iff P(a) >= P(b) for all pairs of events.
bool measure_matches(const probcalc::CompOrder& o, const std::vector<Rational>& measure);

}  // namespace oracle
