#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace probcalc {

class BoolExpr {
 public:
  enum class Kind { Top, Bot, Letter, Not, And, Or };

  BoolExpr();  // Top

  static BoolExpr top();
  static BoolExpr bot();
  static BoolExpr letter(std::string name);
  static BoolExpr negate(BoolExpr a);
  static BoolExpr conj(BoolExpr a, BoolExpr b);
  static BoolExpr disj(BoolExpr a, BoolExpr b);

  Kind kind() const;
  const std::string& name() const;
  const BoolExpr& lhs() const;
  const BoolExpr& rhs() const;

  friend bool operator==(const BoolExpr& a, const BoolExpr& b);
  friend bool operator!=(const BoolExpr& a, const BoolExpr& b) { return !(a == b); }

 private:
  struct Node;
  explicit BoolExpr(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

class Term {
 public:
  enum class Kind { Basic, Cond, Sum, Prod };

  static Term basic(BoolExpr e);
  static Term cond(BoolExpr a, BoolExpr given);
  static Term sum(Term a, Term b);
  static Term prod(Term a, Term b);
  static Term zero() { return basic(BoolExpr::bot()); }
  static Term one() { return basic(BoolExpr::top()); }

  Kind kind() const;
  // Basic: event(); Cond: event() given given().
  const BoolExpr& event() const;
  const BoolExpr& given() const;
  const Term& lhs() const;
  const Term& rhs() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

enum class Rel { Geq, Gt, Eq };

struct Atom {
  enum class Kind { Cmp, Indep };
  Kind kind = Kind::Cmp;
  Rel rel = Rel::Geq;
  std::vector<Term> sides;       // Cmp: {lhs, rhs}
  std::vector<BoolExpr> events;  // Indep: {a, b}

  static Atom geq(Term a, Term b);
  static Atom gt(Term a, Term b);
  static Atom eq(Term a, Term b);
  static Atom indep(BoolExpr a, BoolExpr b);
  // P(a | b) >= P(a) when cond_over_uncond, otherwise P(a) >= P(a | b).
  static Atom confirm(BoolExpr a, BoolExpr b, bool cond_over_uncond);

  const Term& lhs() const { return sides.at(0); }
  const Term& rhs() const { return sides.at(1); }

  friend bool operator==(const Atom& a, const Atom& b);
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
};

struct ConfirmShape {
  BoolExpr event;
  BoolExpr given;
  bool cond_over_uncond;
};
// Recognizes the two confirmation shapes; other atoms yield nullopt.
std::optional<ConfirmShape> confirm_view(const Atom& a);

class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies };

  Formula();  // P(T) >= P(F)

  static Formula atom(Atom a);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Kind kind() const;
  const Atom& atom_value() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

enum class Lang { Comp, Add, Ind, Confirm, SameCond, Cond, Quad, Poly };

const char* lang_name(Lang l);
Lang lang_from_name(const std::string& name);
// Hierarchy order: a <= b when every formula of a is generable in b.
bool lang_leq(Lang a, Lang b);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos);
};

struct NotInFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Formula parse_formula(const std::string& text);
BoolExpr parse_bool(const std::string& text);
Term parse_term(const std::string& text);

std::string render(const BoolExpr& e);
std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Formula& f);

// True when the formula's every atom lies in the grammar of `lang`.
bool generable(const Formula& f, Lang lang);
bool generable(const Atom& a, Lang lang);
Lang classify(const Formula& f);

// Letters in sorted order.
std::vector<std::string> free_letters(const BoolExpr& e);
std::vector<std::string> free_letters(const Term& t);
std::vector<std::string> free_letters(const Atom& a);
std::vector<std::string> free_letters(const Formula& f);

std::vector<Atom> atoms_of(const Formula& f);
std::size_t atom_count(const Formula& f);

}  // namespace probcalc
