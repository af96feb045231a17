#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "probcalc/bench.hpp"
#include "probcalc/semantics.hpp"

namespace gen {

// Additive formulas with 1-3 letters, 1-5 atoms, sums of length at most 4.
std::vector<probcalc::Formula> additive_corpus(std::size_t count, std::uint64_t seed);
// Satisfiable ones only, checked by the oracle.
std::vector<probcalc::Formula> satisfiable_additive(std::size_t count, std::uint64_t seed);
std::vector<probcalc::Formula> same_cond_corpus(std::size_t count, std::uint64_t seed);

// Random probability model with weights of denominator at most max_den.
probcalc::Model random_model(const std::vector<std::string>& letters, int max_den, std::mt19937_64& rng);

}  // namespace gen
