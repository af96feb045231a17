#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probcalc/normalize.hpp"
#include "probcalc/semantics.hpp"

namespace probcalc {

struct PolyBudget {
  long max_denom = 64;
  std::size_t grid_points = 200000;  // exhaustive grid when it has at most this many points
  std::size_t hill_steps = 20000;
  int restarts = 16;
  int lm_iters = 300;
  double tolerance = 1e-9;
  int bp_depth = 40;
  std::size_t bp_boxes = 4000;
  int psatz_degree = 3;
  std::uint64_t seed = 1;
  long timeout_ms = 0;  // 0 disables the wall-clock limit
};

// Closed rational intervals.
struct Interval {
  Rational lo, hi;
};
using Box = std::vector<Interval>;

// Exact enclosure of p over the box (Bernstein form for small polynomials,
// natural interval extension otherwise).
Interval enclose(const Poly& p, const Box& box);

// Branch and prune operates on variables split into a simplex block and boxed rest.
struct BpProblem {
  std::vector<std::string> names;
  std::size_t simplex_vars = 0;  // vars [0, simplex_vars) range over the simplex
  Box bounds;                    // bounds of the remaining vars, indexed from simplex_vars
  std::vector<PolyRow> rows;
};
BpProblem bp_problem(const PolySystem& s);

struct PruneNode {
  Box box;
  int split = -1;       // bisected variable of the reduced problem; -1 at leaves
  std::string reason;   // leaves: "interval row i", "relaxation", "strict row i against row j", "shadow"
  std::vector<PruneNode> children;
};

struct PruneTree {
  std::vector<std::string> var_names;  // variables of the reduced problem
  PruneNode root;
  std::size_t leaves = 0;
  int depth = 0;
};

struct BpResult {
  enum class Kind { UnsatCertified, Unknown, SatBoxHint } kind = Kind::Unknown;
  PruneTree tree;                 // UnsatCertified
  std::vector<double> hint;       // SatBoxHint: center of a surviving box, original variables
  std::size_t boxes = 0;
};

BpResult branch_and_prune(const BpProblem& p, const PolyBudget& b = {});
BpResult branch_and_prune(const PolySystem& s, const PolyBudget& b = {});
// Re-derives every leaf verdict and checks that the children tile their parent.
bool replay_prune_tree(const BpProblem& p, const PruneTree& t);
std::string prune_tree_to_text(const PruneTree& t);

// g + h + d f^(2n) = 0 with g in cone(G) and h in ideal(H).
struct PsatzCertificate {
  struct ConeTerm {
    Rational coeff;                 // >= 0
    std::vector<std::size_t> g;     // multiset of indices into G
    Poly square;                    // the term uses square^2
  };
  struct IdealTerm {
    Poly multiplier;
    std::size_t h = 0;              // index into H
  };
  std::vector<ConeTerm> cone;
  std::vector<IdealTerm> ideal;
  unsigned n = 0;
  Integer d = 1;
};

bool psatz_verify(const PsatzCertificate& c, const std::vector<Poly>& F, const std::vector<Poly>& G,
                  const std::vector<Poly>& H);
// Cone products of at most d_max G-members times monomial squares, ideal
// multipliers of degree at most d_max, n in {0,1,2}; coefficients by exact LP.
std::optional<PsatzCertificate> psatz_search(const std::vector<Poly>& F, const std::vector<Poly>& G,
                                             const std::vector<Poly>& H, int d_max);
std::string psatz_to_text(const PsatzCertificate& c, const std::vector<std::string>& names);

struct PsatzInput {
  std::vector<Poly> F, G, H;
};
// Strict rows become G and F members, the simplex or box becomes G and H members.
PsatzInput psatz_input(const PolySystem& s);

struct NumericPoint {
  std::vector<double> x;
  double residual = 0;  // worst violation of equalities and weak inequalities
  double margin = 0;    // smallest value of strict rows (infinity when none)
};

std::optional<std::vector<Rational>> rational_search(const PolySystem& s, const PolyBudget& b = {});
std::optional<NumericPoint> numeric_search(const PolySystem& s, const PolyBudget& b = {},
                                           const std::vector<double>& seed_point = {});
NumericPoint measure_point(const PolySystem& s, const std::vector<double>& x);

struct UnsatProof {
  enum class Kind { Linear, PruneTree, Psatz } kind = Kind::Linear;
  PolySystem system;   // the refuted system
  std::string text;    // serialized certificate
  PruneTree tree;
  PsatzCertificate psatz;
};

struct PolyVerdict {
  enum class Kind { SatRational, SatNumeric, UnsatCertified, Unknown } kind = Kind::Unknown;
  Model model;                       // SatRational
  std::vector<std::string> letters;  // SatNumeric: letters of the numeric weights
  std::vector<double> numeric;       // SatNumeric: weights over states of `letters`
  double residual = 0;
  double margin = 0;
  std::vector<UnsatProof> proofs;    // UnsatCertified: one per refuted system
  std::string report;                // Unknown: what ran out
  std::size_t disjunct = 0;
};

const char* verdict_name(PolyVerdict::Kind k);

// Decides a raw system; SatRational carries the point in `model` only when
// the system is over states, so callers read `point` instead.
struct SystemVerdict {
  PolyVerdict::Kind kind = PolyVerdict::Kind::Unknown;
  std::vector<Rational> point;
  NumericPoint numeric;
  std::vector<UnsatProof> proofs;
  std::string report;
};
SystemVerdict solve_system(const PolySystem& s, const PolyBudget& b = {});

PolyVerdict sat_multiplicative(const Formula& f, const PolyBudget& b = {});
// sat_additive for formulas generable in the additive family or same_cond,
// sat_multiplicative otherwise.
PolyVerdict decide(const Formula& f, const PolyBudget& b = {});
// P(e) under a numeric verdict.
double numeric_prob(const PolyVerdict& v, const BoolExpr& e);

// Linear consequences of the linear literals projected onto few letters, so
// that the nonlinear core is solved over a small state space.
struct LocalRow {
  std::vector<std::string> letters;
  std::map<StateIndex, Rational> coeffs;  // sum_i c_i P(state_i) REL 0
  RowRel rel = RowRel::Eq;
};

struct Presolved {
  std::vector<std::string> kept;  // letters of the residual problem
  Conjunct residual;              // nonlinear literals, over `kept`
  std::vector<LocalRow> local;    // linear constraints over subsets of `kept`
  struct Gadget {
    std::string letter;
    std::vector<std::string> context;
    std::vector<LocalRow> rows;   // over context + letter
  };
  std::vector<Gadget> gadgets;    // in elimination order
  bool contradiction = false;     // a projected row failed outright
};

Presolved presolve(const Conjunct& c, const std::vector<std::string>& letters, std::size_t max_joint = 5);
// Builds the residual system over the states of `kept`.
PolySystem residual_system(const Presolved& p);
// Lifts a model over `kept` to `letters` by undoing the eliminations; letters
// never mentioned are set true.
std::optional<Model> extend_model(const Presolved& p, const Model& m, const std::vector<std::string>& letters);

}  // namespace probcalc
