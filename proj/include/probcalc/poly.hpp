#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "probcalc/rational.hpp"

namespace probcalc {

using Var = std::uint32_t;
// Sorted by variable, exponents positive. Empty monomial is the constant 1.
using Monomial = std::vector<std::pair<Var, std::uint32_t>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
std::uint32_t mono_degree(const Monomial& m);

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(Var v);
  static Poly monomial(const Monomial& m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant() const;
  Rational coeff(const Monomial& m) const;
  std::uint32_t degree() const;
  std::set<Var> vars() const;
  std::size_t size() const { return terms_.size(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;
  Poly derivative(Var v) const;
  Poly substitute(Var v, const Poly& p) const;
  Poly rename(const std::map<Var, Var>& m) const;

  // Coefficients rendered as p/q; variables through `name`.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace probcalc
