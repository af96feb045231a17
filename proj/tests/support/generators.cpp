#include "support/generators.hpp"

#include <algorithm>

#include "support/oracles.hpp"

namespace gen {

using namespace probcalc;

std::vector<Formula> additive_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<Formula> out;
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    int letters = 1 + static_cast<int>(rng() % 3);
    int atoms = 1 + static_cast<int>(rng() % 5);
    out.push_back(generate(Lang::Add, letters, atoms, rng()));
  }
  return out;
}

std::vector<Formula> satisfiable_additive(std::size_t count, std::uint64_t seed) {
  std::vector<Formula> out;
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    Formula f = generate(Lang::Add, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 4), rng());
    if (oracle::additive_sat(f)) out.push_back(f);
  }
  return out;
}

std::vector<Formula> same_cond_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<Formula> out;
  std::mt19937_64 rng(seed);
  while (out.size() < count)
    out.push_back(generate(Lang::SameCond, 1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3), rng()));
  return out;
}

Model random_model(const std::vector<std::string>& letters, int max_den, std::mt19937_64& rng) {
  const std::size_t n = std::size_t{1} << letters.size();
  long den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
  std::vector<long> cuts(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) cuts[i] = static_cast<long>(rng() % static_cast<std::uint64_t>(den + 1));
  cuts[n - 1] = den;
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> w(n);
  long prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = Rational(cuts[i] - prev, den);
    w[i].canonicalize();
    prev = cuts[i];
  }
  return model_from_vector(letters, w);
}

}  // namespace gen
