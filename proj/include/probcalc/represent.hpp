#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probcalc/linsolve.hpp"
#include "probcalc/rational.hpp"

namespace probcalc {

// Events over atoms 0..n-1 as bitmasks.
using Subset = std::uint32_t;

std::string subset_to_text(Subset s);
// "{0,2}" or "{}"; throws ParseError on malformed text or atoms out of range.
Subset parse_subset(const std::string& text, int atoms);

enum class CmpRel { Geq, Gt, Eq };
const char* cmp_rel_text(CmpRel r);
CmpRel parse_cmp_rel(const std::string& s);

// A relation on items 0..size-1 recording, per ordered pair, none, weak or strict.
class Preorder {
 public:
  explicit Preorder(std::size_t n = 0);

  std::size_t size() const { return n_; }
  bool geq(std::size_t i, std::size_t j) const { return at(i, j) >= 1; }
  bool gt(std::size_t i, std::size_t j) const { return at(i, j) == 2; }

  void relate(std::size_t i, std::size_t j, CmpRel r);
  // Overwrites whether i >= j and recomputes strictness of the pair.
  void set_geq(std::size_t i, std::size_t j, bool v);
  // Transitive closure; strictness propagates along paths. Total results get
  // strictness from asymmetry.
  void close();

  bool total() const;
  bool transitive() const;
  // Some i > j with j >= i also recorded.
  bool consistent() const;
  // Equivalence classes, lowest first; requires a total transitive relation.
  std::vector<std::vector<std::size_t>> classes() const;

  // i >= j iff v[i] >= v[j].
  template <class T>
  static Preorder from_values(const std::vector<T>& v) {
    Preorder p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) p.val_[i * p.n_ + j] = v[i] >= v[j] ? (v[j] >= v[i] ? 1 : 2) : 0;
    return p;
  }

  bool operator==(const Preorder& o) const { return n_ == o.n_ && val_ == o.val_; }

 private:
  std::uint8_t at(std::size_t i, std::size_t j) const { return val_[i * n_ + j]; }
  std::size_t n_ = 0;
  std::vector<std::uint8_t> val_;
};

struct Comparison {
  Subset a = 0, b = 0;
  CmpRel rel = CmpRel::Geq;
};

// Comparative order over the 2^atoms events.
struct CompOrder {
  int atoms = 0;
  Preorder rel;

  static CompOrder from_measure(const std::vector<Rational>& weights);
  // Closure of the listed comparisons.
  static CompOrder from_comparisons(int atoms, const std::vector<Comparison>& cs);
  bool geq(Subset a, Subset b) const { return rel.geq(a, b); }
  bool gt(Subset a, Subset b) const { return rel.gt(a, b); }
  // Chain description of a total transitive order, otherwise every recorded pair.
  std::vector<Comparison> comparisons() const;
};

struct AxiomCheck {
  std::string name;
  bool ok = true;
  std::string witness;  // failing tuple
};
using AxiomReport = std::vector<AxiomCheck>;
bool all_pass(const AxiomReport& r);

// Tot (reflexive, total, transitive), NonDeg, NonTriv, Quasi.
AxiomReport check_definetti_axioms(const CompOrder& o);
// Every FinCan_n instance over events: balanced (A_i), (B_i) with A_i >= B_i
// for i < n give B_n >= A_n.
AxiomCheck check_fincan(const CompOrder& o, std::size_t n);

// sum mult * (1_a - 1_b) = 0 over entries a >= b held in the order, one strict.
struct BalancedCertificate {
  enum class Kind { Balanced, NonDeg, NonTriv } kind = Kind::Balanced;
  struct Entry {
    Subset a = 0, b = 0;
    Integer mult = 1;
    bool strict = false;
    bool axiom = false;  // a measure axiom ({i} >= {} or Omega > {}) not recorded in a partial order
  };
  std::vector<Entry> entries;
};

bool certificate_balanced(const BalancedCertificate& c, int atoms);
// Kind-specific check against the order, including balance for Kind::Balanced.
bool verify_certificate(const BalancedCertificate& c, const CompOrder& o);
std::string certificate_to_text(const BalancedCertificate& c);

struct RepresentResult {
  bool yes = false;
  std::vector<Rational> measure;  // yes: P({i}), normalized
  BalancedCertificate certificate;
};

// Throws std::invalid_argument on non-total input unless allow_partial; a
// partial order asks for some representable total extension.
RepresentResult representable(const CompOrder& o, bool allow_partial = false);
// A yes-measure reproduces the order: a >= b iff P(a) >= P(b).
bool measure_reproduces(const CompOrder& o, const std::vector<Rational>& measure);

struct SkResult {
  bool violated = false;
  bool exhaustive = false;  // holds: no all-strict balanced family exists at all
  BalancedCertificate certificate;
  std::size_t distinct = 0;  // distinct pairs in the violation
};

// Searches all-strict balanced families with at most k distinct pairs and
// multiplicities at most `budget`.
SkResult check_sk(const CompOrder& o, std::size_t k, long budget);

// Quadratic orders compare ordered pairs (A,B), item index A * 2^atoms + B.
struct QuadOrder {
  int atoms = 0;
  Preorder rel;

  std::size_t item(Subset a, Subset b) const { return (std::size_t{a} << atoms) | b; }
  bool geq(Subset a, Subset b, Subset c, Subset d) const { return rel.geq(item(a, b), item(c, d)); }
  bool gt(Subset a, Subset b, Subset c, Subset d) const { return rel.gt(item(a, b), item(c, d)); }

  struct PairComparison {
    Subset a = 0, b = 0, c = 0, d = 0;
    CmpRel rel = CmpRel::Geq;
  };
  // Closure of the comparisons; `symmetric` also relates (A,B) ~ (B,A).
  static QuadOrder from_comparisons(int atoms, const std::vector<PairComparison>& cs, bool symmetric);
  std::vector<PairComparison> comparisons() const;
};

// Q1-Q4 exhaustively, Q5_m for 2 <= m <= q5_bound, Q6_m for m <= q6_bound.
// With stop_early the report ends at the first failure.
AxiomReport quad_check_axioms(const QuadOrder& q, int q5_bound = 3, int q6_bound = 3, bool stop_early = false);

struct BilinearMatrix {
  std::vector<std::vector<Rational>> m;

  std::size_t size() const { return m.size(); }
  Rational apply(Subset a, Subset b) const;  // 1_a^T M 1_b
  std::size_t rank() const;
  bool symmetric() const;
};

QuadOrder order_from_matrix(const BilinearMatrix& m);

// a + b sqrt(5)
struct Surd5 {
  Rational a, b;
  int sign() const;
  double to_double() const;
  std::string to_string() const;
};
Surd5 operator+(const Surd5& x, const Surd5& y);
Surd5 operator-(const Surd5& x, const Surd5& y);
Surd5 operator*(const Surd5& x, const Surd5& y);
bool operator<(const Surd5& x, const Surd5& y);
bool operator>=(const Surd5& x, const Surd5& y);
bool operator==(const Surd5& x, const Surd5& y);

// Representing matrices [[1,x],[x,x^2]] for x in a region, or [[0,0],[0,1]].
struct QuadRegion {
  bool degenerate = false;
  bool point = false;                  // x == lo
  Surd5 lo, hi;                        // open interval (lo, hi) unless point
  bool unbounded = false;              // hi is +infinity
  Surd5 sample;                        // an x inside the region
  QuadOrder order;
  std::string description() const;     // "x = 1", "1 < x < 1/2 + 1/2*sqrt(5)", "degenerate"
  std::string matrix() const;
  std::vector<double> measure() const; // P({0}), P({1}) at the sample
};

// The 9 orders representable on two atoms, ascending in x, degenerate last.
const std::vector<QuadRegion>& quad_regions_n2();

struct QuadN2Result {
  bool yes = false;
  std::size_t region = 0;  // index into quad_regions_n2()
  std::string reason;      // no: why
};
// Throws std::invalid_argument unless q has two atoms.
QuadN2Result quad_representable_n2(const QuadOrder& q);

// Every total symmetric preorder on the pairs over two atoms passing Q1-Q4,
// Q5_2 and Q6_m for m <= q6_bound. Orders that split the pairs (∅,A) are
// skipped since Q2 forces them into one lowest class.
std::vector<QuadOrder> quad_sweep_n2(int q6_bound = 3);

}  // namespace probcalc
