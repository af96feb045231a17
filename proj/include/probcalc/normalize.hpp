#pragma once

#include <optional>
#include <string>
#include <vector>

#include "probcalc/poly.hpp"
#include "probcalc/semantics.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

enum class RowRel { Eq, Geq, Gt, Neq };
const char* rel_symbol(RowRel r);

// sum_i a_i x_i REL rhs
struct LinRow {
  std::map<Var, Rational> coeffs;
  RowRel rel = RowRel::Geq;
  Rational rhs = 0;
};

// With `simplex` set, the rows x_i >= 0 and sum x_i = 1 are implicit.
struct LinSystem {
  std::vector<std::string> var_names;
  std::vector<LinRow> rows;
  bool simplex = true;
  std::size_t nvars() const { return var_names.size(); }
};

// p REL 0
struct PolyRow {
  Poly p;
  RowRel rel = RowRel::Geq;
};

// With `simplex` set, variables range over the probability simplex;
// otherwise each variable lies in the closed interval `box[i]`.
struct PolySystem {
  std::vector<std::string> var_names;
  std::vector<PolyRow> rows;
  bool simplex = true;
  std::vector<std::pair<Rational, Rational>> box;
  std::size_t nvars() const { return var_names.size(); }
};

std::vector<std::string> state_descriptions(const std::vector<std::string>& letters);

struct Literal {
  Atom atom;
  bool positive = true;  // negative only for Indep
};
using Conjunct = std::vector<Literal>;

std::vector<Conjunct> dnf(const Formula& f);
Formula conjunct_formula(const Conjunct& c);

// Sum of x_delta over the states satisfying e.
Poly event_poly(const BoolExpr& e, const std::vector<std::string>& letters);
// num/den of a term with P(a |: b) = P(a & b)/P(b).
std::pair<Poly, Poly> term_fraction(const Term& t, const std::vector<std::string>& letters);
PolyRow literal_row(const Literal& l, const std::vector<std::string>& letters);

struct Expansion {
  bool linear = false;
  LinSystem lin;    // filled when linear
  PolySystem poly;  // always filled
};
Expansion expand(const Conjunct& c, const std::vector<std::string>& letters);

bool row_holds(const LinRow& r, const std::vector<Rational>& x);
bool row_holds(const PolyRow& r, const std::vector<Rational>& x);
// Includes the implicit simplex or box rows.
bool system_holds(const LinSystem& s, const std::vector<Rational>& x);
bool system_holds(const PolySystem& s, const std::vector<Rational>& x);

LinSystem materialize_simplex(const LinSystem& s);
PolySystem to_poly(const LinSystem& s);
std::optional<LinSystem> to_linear(const PolySystem& s);

std::string to_text(const LinSystem& s, const std::vector<std::string>& letters = {});
std::string to_text(const PolySystem& s, const std::vector<std::string>& letters = {});
PolySystem parse_poly_system(const std::string& text);
LinSystem parse_lin_system(const std::string& text);

}  // namespace probcalc
