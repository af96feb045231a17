#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probcalc/semantics.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

// A short Boolean expression for the event given as a set of states (bit s
// set means state s belongs to the event).
BoolExpr event_expr(std::uint64_t mask, const std::vector<std::string>& letters);

// Smallest-denominator n/m with lo < n/m < hi, for 0 <= lo < hi.
std::pair<Integer, Integer> fraction_between(const Rational& lo, const Rational& hi);

struct DistinguishResult {
  std::optional<Formula> witness;  // holds in exactly one of the two models
  bool exhaustive = true;          // false when the atom budget cut the scan short
  std::size_t atoms_checked = 0;
};

// Scans the atoms of `lang` over all events of the shared letters. Throws
// std::invalid_argument when the letter sets differ.
DistinguishResult distinguish(const Model& m1, const Model& m2, Lang lang, std::size_t max_atoms = 50'000'000);
std::optional<Formula> distinguishable(const Model& m1, const Model& m2, Lang lang);

struct FixtureBlock {
  std::string name;
  Model m1, m2;
  std::vector<std::pair<Lang, bool>> expect;  // language, distinguishable
};

// The six measure pairs separating the hierarchy.
std::vector<FixtureBlock> hierarchy_blocks();

struct HierarchyRow {
  std::string block;
  Lang lang = Lang::Comp;
  bool expected = false;
  bool got = false;
  std::string witness;
  bool ok() const { return expected == got; }
};

struct HierarchyReport {
  std::vector<HierarchyRow> rows;
  bool all_ok() const;
  std::string to_text() const;
};

HierarchyReport hierarchy_report(const std::vector<FixtureBlock>& blocks = hierarchy_blocks());

}  // namespace probcalc
