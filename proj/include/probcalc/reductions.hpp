#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probcalc/normalize.hpp"
#include "probcalc/polysolve.hpp"
#include "probcalc/semantics.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

// P(a |: g) becomes P(a & g) throughout; each cond atom must share its condition.
Formula same_cond_to_comp(const Formula& f);

// Inverse-ETR instances: x_i + x_j = x_k or x_i * x_j = 1, variables in [1/2, 2].
struct EtrConstraint {
  enum class Kind { Add, Inv } kind = Kind::Add;
  int i = 0, j = 0, k = 0;
};

struct EtrSystem {
  int n = 0;
  std::vector<EtrConstraint> constraints;
};

bool etr_holds(const EtrSystem& s, const std::vector<Rational>& x);
double etr_residual(const EtrSystem& s, const std::vector<double>& x);
PolySystem etr_to_poly(const EtrSystem& s);
std::string etr_to_text(const EtrSystem& s);
// One constraint per line: "x1 + x2 = x3" or "x1 * x2 = 1", variables x1..xn.
EtrSystem parse_etr(const std::string& text);

// Random systems over n variables; `planted` ones come with a solution in [1/2, 2].
struct EtrInstance {
  EtrSystem system;
  std::vector<Rational> planted;  // empty unless planted
};
EtrInstance random_etr(int n, int constraints, bool planted, std::uint64_t seed);

// Equal-weight partition of Omega into N cells coded in binary over fresh letters.
struct Partition {
  int cells = 1;
  std::vector<std::string> letters;
  BoolExpr cell(int c) const;
};

// Letters: d<i> for x_i, lo<i>_<b> and hi<i>_<b> for the bound partitions,
// k<b> and kappa for the shared 4n^2 constant, u<c>/v<c> for sums and c<c> for
// square copies.
struct IndEncoding {
  Formula formula;
  int n = 0;
  std::vector<std::string> delta;  // delta[i] is the letter for x_i
  std::size_t atoms = 0;
  // Bookkeeping for the forward witness map.
  struct Bound {
    int var;
    bool lower;  // P(delta) >= 1/N when lower, else 1/N >= P(delta)
    Partition part;
  };
  std::vector<Bound> bounds;
  Partition constant;  // 4n^2 cells
  struct Pair {
    EtrConstraint c;
    std::string u, v;     // primed events for Add
    std::string copy;     // square copy for Inv with i == j
  };
  std::vector<Pair> pairs;
};

IndEncoding etr_inverse_to_ind(const EtrSystem& s);
// x_i -> P(delta_i) = x_i / 2n on an explicitly built model.
Model transport_forward(const IndEncoding& enc, const std::vector<Rational>& x);
// P(delta_i) -> 2n P(delta_i).
std::vector<Rational> transport_backward(const IndEncoding& enc, const Model& m);

// The formula as a disjunction of polynomial systems over x_delta.
struct EtrSentence {
  std::vector<std::string> letters;
  std::vector<PolySystem> systems;  // one per disjunct
  std::string smtlib;
  std::string plain;
  std::size_t event_count = 0;  // |E|: distinct events under P
};
EtrSentence poly_to_etr(const Formula& f);

// All supports of size 1..max_size over `states` states, in lexicographic order.
std::vector<std::vector<Var>> support_candidates(std::size_t states, std::size_t max_size);
// The system with every state outside `support` forced to zero.
PolySystem restrict_to_support(const PolySystem& s, const std::vector<Var>& support);

// Decides f by guessing supports of size at most |E| and solving each restricted system.
struct SupportVerdict {
  PolyVerdict::Kind kind = PolyVerdict::Kind::Unknown;
  std::vector<Var> support;         // Sat: the support that worked
  std::vector<Rational> point;      // SatRational: weights over all states
  std::vector<double> numeric;      // SatNumeric
  std::size_t disjunct = 0;
  std::size_t supports_tried = 0;
};
SupportVerdict sat_by_support(const Formula& f, const PolyBudget& b = {});

}  // namespace probcalc
