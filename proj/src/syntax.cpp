#include "probcalc/syntax.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace probcalc {

struct BoolExpr::Node {
  Kind kind;
  std::string name;
  BoolExpr a, b;
};

BoolExpr::BoolExpr() : BoolExpr(top()) {}
BoolExpr::BoolExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

BoolExpr BoolExpr::top() {
  static const BoolExpr t(std::shared_ptr<const Node>(new Node{Kind::Top, "", BoolExpr(nullptr), BoolExpr(nullptr)}));
  return t;
}
BoolExpr BoolExpr::bot() {
  static const BoolExpr f(std::shared_ptr<const Node>(new Node{Kind::Bot, "", BoolExpr(nullptr), BoolExpr(nullptr)}));
  return f;
}
BoolExpr BoolExpr::letter(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty letter name");
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Letter, std::move(name), BoolExpr(nullptr), BoolExpr(nullptr)}));
}
BoolExpr BoolExpr::negate(BoolExpr a) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Not, "", std::move(a), BoolExpr(nullptr)}));
}
BoolExpr BoolExpr::conj(BoolExpr a, BoolExpr b) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::And, "", std::move(a), std::move(b)}));
}
BoolExpr BoolExpr::disj(BoolExpr a, BoolExpr b) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Or, "", std::move(a), std::move(b)}));
}

BoolExpr::Kind BoolExpr::kind() const { return n_->kind; }
const std::string& BoolExpr::name() const { return n_->name; }
const BoolExpr& BoolExpr::lhs() const { return n_->a; }
const BoolExpr& BoolExpr::rhs() const { return n_->b; }

bool operator==(const BoolExpr& x, const BoolExpr& y) {
  if (x.n_ == y.n_) return true;
  if (!x.n_ || !y.n_) return false;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case BoolExpr::Kind::Top:
    case BoolExpr::Kind::Bot:
      return true;
    case BoolExpr::Kind::Letter:
      return x.name() == y.name();
    case BoolExpr::Kind::Not:
      return x.lhs() == y.lhs();
    default:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

struct Term::Node {
  Kind kind;
  BoolExpr e, g;
  Term a, b;
};

Term::Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

Term Term::basic(BoolExpr e) {
  return Term(std::make_shared<const Node>(Node{Kind::Basic, std::move(e), BoolExpr::top(), Term(nullptr), Term(nullptr)}));
}
Term Term::cond(BoolExpr a, BoolExpr given) {
  return Term(std::make_shared<const Node>(Node{Kind::Cond, std::move(a), std::move(given), Term(nullptr), Term(nullptr)}));
}
Term Term::sum(Term a, Term b) {
  return Term(std::make_shared<const Node>(Node{Kind::Sum, {}, {}, std::move(a), std::move(b)}));
}
Term Term::prod(Term a, Term b) {
  return Term(std::make_shared<const Node>(Node{Kind::Prod, {}, {}, std::move(a), std::move(b)}));
}

Term::Kind Term::kind() const { return n_->kind; }
const BoolExpr& Term::event() const { return n_->e; }
const BoolExpr& Term::given() const { return n_->g; }
const Term& Term::lhs() const { return n_->a; }
const Term& Term::rhs() const { return n_->b; }

bool operator==(const Term& x, const Term& y) {
  if (x.n_ == y.n_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Basic:
      return x.event() == y.event();
    case Term::Kind::Cond:
      return x.event() == y.event() && x.given() == y.given();
    default:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

Atom Atom::geq(Term a, Term b) { return Atom{Kind::Cmp, Rel::Geq, {std::move(a), std::move(b)}, {}}; }
Atom Atom::gt(Term a, Term b) { return Atom{Kind::Cmp, Rel::Gt, {std::move(a), std::move(b)}, {}}; }
Atom Atom::eq(Term a, Term b) { return Atom{Kind::Cmp, Rel::Eq, {std::move(a), std::move(b)}, {}}; }
Atom Atom::indep(BoolExpr a, BoolExpr b) { return Atom{Kind::Indep, Rel::Eq, {}, {std::move(a), std::move(b)}}; }
Atom Atom::confirm(BoolExpr a, BoolExpr b, bool cond_over_uncond) {
  Term c = Term::cond(a, std::move(b));
  Term u = Term::basic(std::move(a));
  return cond_over_uncond ? geq(c, u) : geq(u, c);
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Atom::Kind::Indep) return a.events[0] == b.events[0] && a.events[1] == b.events[1];
  return a.rel == b.rel && a.sides[0] == b.sides[0] && a.sides[1] == b.sides[1];
}

std::optional<ConfirmShape> confirm_view(const Atom& a) {
  if (a.kind != Atom::Kind::Cmp || a.rel != Rel::Geq) return std::nullopt;
  const Term& l = a.lhs();
  const Term& r = a.rhs();
  if (l.kind() == Term::Kind::Cond && r.kind() == Term::Kind::Basic && l.event() == r.event())
    return ConfirmShape{l.event(), l.given(), true};
  if (r.kind() == Term::Kind::Cond && l.kind() == Term::Kind::Basic && r.event() == l.event())
    return ConfirmShape{r.event(), r.given(), false};
  return std::nullopt;
}

struct Formula::Node {
  Kind kind;
  Atom atom;
  Formula a, b;
};

Formula::Formula() : Formula(atom(Atom::geq(Term::one(), Term::zero()))) {}
Formula::Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), Formula(nullptr), Formula(nullptr)}));
}
Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(f), Formula(nullptr)}));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(a), std::move(b)}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(a), std::move(b)}));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, std::move(a), std::move(b)}));
}
Formula Formula::iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula();
  Formula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = conj(r, fs[i]);
  return r;
}
Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return negate(Formula());
  Formula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = disj(r, fs[i]);
  return r;
}

Formula::Kind Formula::kind() const { return n_->kind; }
const Atom& Formula::atom_value() const { return n_->atom; }
const Formula& Formula::lhs() const { return n_->a; }
const Formula& Formula::rhs() const { return n_->b; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.n_ == y.n_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Formula::Kind::Atom:
      return x.atom_value() == y.atom_value();
    case Formula::Kind::Not:
      return x.lhs() == y.lhs();
    default:
      return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
}

// ---- languages ----

namespace {

constexpr std::array<Lang, 8> kAllLangs = {Lang::Comp, Lang::Add,  Lang::Ind,  Lang::Confirm,
                                           Lang::SameCond, Lang::Cond, Lang::Quad, Lang::Poly};

int lang_index(Lang l) { return static_cast<int>(l); }

struct LangOrder {
  bool leq[8][8] = {};
  LangOrder() {
    auto edge = [&](Lang a, Lang b) { leq[lang_index(a)][lang_index(b)] = true; };
    for (Lang l : kAllLangs) edge(l, l);
    edge(Lang::Comp, Lang::Add);
    edge(Lang::Add, Lang::Poly);
    edge(Lang::Comp, Lang::SameCond);
    edge(Lang::SameCond, Lang::Cond);
    edge(Lang::Cond, Lang::Quad);
    edge(Lang::Quad, Lang::Poly);
    edge(Lang::Ind, Lang::Confirm);
    edge(Lang::Confirm, Lang::Cond);
    for (int k = 0; k < 8; ++k)
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  }
};

const LangOrder& lang_order() {
  static const LangOrder o;
  return o;
}

bool is_sum_of_basics(const Term& t) {
  if (t.kind() == Term::Kind::Basic) return true;
  return t.kind() == Term::Kind::Sum && is_sum_of_basics(t.lhs()) && is_sum_of_basics(t.rhs());
}

bool is_poly_term(const Term& t) {
  if (t.kind() == Term::Kind::Basic) return true;
  if (t.kind() == Term::Kind::Cond) return false;
  return is_poly_term(t.lhs()) && is_poly_term(t.rhs());
}

bool is_quad_side(const Term& t) {
  if (t.kind() == Term::Kind::Basic) return true;
  return t.kind() == Term::Kind::Prod && t.lhs().kind() == Term::Kind::Basic &&
         t.rhs().kind() == Term::Kind::Basic;
}

bool is_cond_side(const Term& t) { return t.kind() == Term::Kind::Basic || t.kind() == Term::Kind::Cond; }

// Languages whose grammar produces the atom directly.
std::vector<Lang> native_langs(const Atom& a) {
  std::vector<Lang> out;
  if (a.kind == Atom::Kind::Indep) {
    out.push_back(Lang::Ind);
    return out;
  }
  const Term& l = a.lhs();
  const Term& r = a.rhs();
  bool basic = l.kind() == Term::Kind::Basic && r.kind() == Term::Kind::Basic;
  if (basic) out.push_back(Lang::Comp);
  if (is_sum_of_basics(l) && is_sum_of_basics(r)) out.push_back(Lang::Add);
  if (is_poly_term(l) && is_poly_term(r)) out.push_back(Lang::Poly);
  if (is_quad_side(l) && is_quad_side(r)) out.push_back(Lang::Quad);
  if (is_cond_side(l) && is_cond_side(r)) {
    out.push_back(Lang::Cond);
    if (basic || (l.kind() == Term::Kind::Cond && r.kind() == Term::Kind::Cond && l.given() == r.given()))
      out.push_back(Lang::SameCond);
  }
  if (a.rel == Rel::Eq && basic) out.push_back(Lang::Ind);
  if (a.rel == Rel::Eq && basic) out.push_back(Lang::Confirm);
  if (confirm_view(a)) out.push_back(Lang::Confirm);
  return out;
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    out.push_back(f.atom_value());
    return;
  }
  collect_atoms(f.lhs(), out);
  if (f.kind() != Formula::Kind::Not) collect_atoms(f.rhs(), out);
}

void letters_into(const BoolExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case BoolExpr::Kind::Letter:
      out.insert(e.name());
      break;
    case BoolExpr::Kind::Not:
      letters_into(e.lhs(), out);
      break;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
      letters_into(e.lhs(), out);
      letters_into(e.rhs(), out);
      break;
    default:
      break;
  }
}

void letters_into(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Basic:
      letters_into(t.event(), out);
      break;
    case Term::Kind::Cond:
      letters_into(t.event(), out);
      letters_into(t.given(), out);
      break;
    default:
      letters_into(t.lhs(), out);
      letters_into(t.rhs(), out);
  }
}

void letters_into(const Atom& a, std::set<std::string>& out) {
  if (a.kind == Atom::Kind::Indep) {
    letters_into(a.events[0], out);
    letters_into(a.events[1], out);
  } else {
    letters_into(a.sides[0], out);
    letters_into(a.sides[1], out);
  }
}

}  // namespace

const char* lang_name(Lang l) {
  switch (l) {
    case Lang::Comp: return "comp";
    case Lang::Add: return "add";
    case Lang::Ind: return "ind";
    case Lang::Confirm: return "confirm";
    case Lang::SameCond: return "same_cond";
    case Lang::Cond: return "cond";
    case Lang::Quad: return "quad";
    case Lang::Poly: return "poly";
  }
  return "?";
}

Lang lang_from_name(const std::string& name) {
  for (Lang l : kAllLangs)
    if (name == lang_name(l)) return l;
  throw std::invalid_argument("unknown language: " + name);
}

bool lang_leq(Lang a, Lang b) { return lang_order().leq[lang_index(a)][lang_index(b)]; }

bool generable(const Atom& a, Lang lang) {
  for (Lang n : native_langs(a))
    if (lang_leq(n, lang)) return true;
  return false;
}

bool generable(const Formula& f, Lang lang) {
  for (const Atom& a : atoms_of(f))
    if (!generable(a, lang)) return false;
  return true;
}

Lang classify(const Formula& f) {
  std::vector<Lang> cands;
  for (Lang l : kAllLangs)
    if (generable(f, l)) cands.push_back(l);
  if (cands.empty()) throw NotInFamily("formula is not generated by any language of the family");
  for (Lang l : cands) {
    bool minimal = true;
    for (Lang m : cands)
      if (m != l && lang_leq(m, l)) minimal = false;
    if (minimal) return l;
  }
  return cands.front();
}

std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  collect_atoms(f, out);
  return out;
}

std::size_t atom_count(const Formula& f) { return atoms_of(f).size(); }

std::vector<std::string> free_letters(const BoolExpr& e) {
  std::set<std::string> s;
  letters_into(e, s);
  return {s.begin(), s.end()};
}
std::vector<std::string> free_letters(const Term& t) {
  std::set<std::string> s;
  letters_into(t, s);
  return {s.begin(), s.end()};
}
std::vector<std::string> free_letters(const Atom& a) {
  std::set<std::string> s;
  letters_into(a, s);
  return {s.begin(), s.end()};
}
std::vector<std::string> free_letters(const Formula& f) {
  std::set<std::string> s;
  for (const Atom& a : atoms_of(f)) letters_into(a, s);
  return {s.begin(), s.end()};
}

// ---- rendering ----

namespace {

int bool_prec(const BoolExpr& e) {
  switch (e.kind()) {
    case BoolExpr::Kind::Or: return 1;
    case BoolExpr::Kind::And: return 2;
    case BoolExpr::Kind::Not: return 3;
    default: return 4;
  }
}

std::string bool_str(const BoolExpr& e) {
  switch (e.kind()) {
    case BoolExpr::Kind::Top: return "T";
    case BoolExpr::Kind::Bot: return "F";
    case BoolExpr::Kind::Letter: return e.name();
    case BoolExpr::Kind::Not: {
      std::string in = bool_str(e.lhs());
      return bool_prec(e.lhs()) < 3 ? "~(" + in + ")" : "~" + in;
    }
    default: {
      int p = bool_prec(e);
      std::string l = bool_str(e.lhs());
      std::string r = bool_str(e.rhs());
      if (bool_prec(e.lhs()) < p) l = "(" + l + ")";
      if (bool_prec(e.rhs()) <= p) r = "(" + r + ")";
      return l + (e.kind() == BoolExpr::Kind::And ? " & " : " | ") + r;
    }
  }
}

int term_prec(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Sum: return 1;
    case Term::Kind::Prod: return 2;
    default: return 3;
  }
}

std::string term_str(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Basic: return "P(" + bool_str(t.event()) + ")";
    case Term::Kind::Cond: return "P(" + bool_str(t.event()) + " |: " + bool_str(t.given()) + ")";
    default: {
      int p = term_prec(t);
      std::string l = term_str(t.lhs());
      std::string r = term_str(t.rhs());
      if (term_prec(t.lhs()) < p) l = "(" + l + ")";
      if (term_prec(t.rhs()) <= p) r = "(" + r + ")";
      return l + (t.kind() == Term::Kind::Sum ? " + " : " * ") + r;
    }
  }
}

int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

std::string formula_str(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return render(f.atom_value());
    case Formula::Kind::Not: {
      const Formula& in = f.lhs();
      if (in.kind() == Formula::Kind::Not) return "!" + formula_str(in);
      return "!(" + formula_str(in) + ")";
    }
    default: {
      int p = formula_prec(f);
      std::string l = formula_str(f.lhs());
      std::string r = formula_str(f.rhs());
      bool right_assoc = f.kind() == Formula::Kind::Implies;
      int lp = formula_prec(f.lhs()), rp = formula_prec(f.rhs());
      if (right_assoc ? lp <= p : lp < p) l = "(" + l + ")";
      if (right_assoc ? rp < p : rp <= p) r = "(" + r + ")";
      const char* op = f.kind() == Formula::Kind::And ? " && " : f.kind() == Formula::Kind::Or ? " || " : " => ";
      return l + op + r;
    }
  }
}

}  // namespace

std::string render(const BoolExpr& e) { return bool_str(e); }
std::string render(const Term& t) { return term_str(t); }

std::string render(const Atom& a) {
  if (a.kind == Atom::Kind::Indep) return "indep(" + bool_str(a.events[0]) + ", " + bool_str(a.events[1]) + ")";
  const char* op = a.rel == Rel::Geq ? " >= " : a.rel == Rel::Gt ? " > " : " = ";
  return term_str(a.lhs()) + op + term_str(a.rhs());
}

std::string render(const Formula& f) { return formula_str(f); }

}  // namespace probcalc
