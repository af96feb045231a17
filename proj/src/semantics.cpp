#include "probcalc/semantics.hpp"

#include <stdexcept>

namespace probcalc {

std::string state_name(StateIndex s, const std::vector<std::string>& letters) {
  if (letters.empty()) return "T";
  std::string out;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (j) out += '&';
    if (!letter_true(s, j)) out += '~';
    out += letters[j];
  }
  return out;
}

StateIndex parse_state(const std::string& key, const std::vector<std::string>& letters) {
  if (letters.empty()) {
    if (key == "T") return 0;
    throw std::invalid_argument("state key '" + key + "' for empty letter set");
  }
  LetterIndex li(letters);
  StateIndex s = 0;
  std::vector<bool> seen(letters.size(), false);
  std::size_t i = 0;
  while (i <= key.size()) {
    std::size_t amp = key.find('&', i);
    if (amp == std::string::npos) amp = key.size();
    std::string lit = key.substr(i, amp - i);
    bool neg = !lit.empty() && lit[0] == '~';
    if (neg) lit = lit.substr(1);
    if (!li.contains(lit)) throw std::invalid_argument("state key '" + key + "' mentions unknown letter " + lit);
    std::size_t j = li.at(lit);
    if (seen[j]) throw std::invalid_argument("state key '" + key + "' repeats letter " + lit);
    seen[j] = true;
    if (neg) s |= StateIndex{1} << j;
    i = amp + 1;
  }
  for (bool b : seen)
    if (!b) throw std::invalid_argument("state key '" + key + "' is incomplete");
  return s;
}

Rational Model::weight(StateIndex s) const {
  auto it = weights.find(s);
  return it == weights.end() ? Rational(0) : it->second;
}

Rational Model::total() const {
  Rational t = 0;
  for (const auto& [s, w] : weights) t += w;
  return t;
}

std::size_t Model::support_size() const {
  std::size_t n = 0;
  for (const auto& [s, w] : weights)
    if (w != 0) ++n;
  return n;
}

Model Model::normalized() const {
  Model out{letters, {}, Mode::Prob};
  Rational t = total();
  if (t <= 0) throw std::invalid_argument("model has no positive weight");
  for (const auto& [s, w] : weights)
    if (w != 0) out.weights[s] = w / t;
  return out;
}

void Model::validate() const {
  if (letters.size() > 62) throw std::invalid_argument("too many letters");
  for (const auto& [s, w] : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    if (s >= state_count()) throw std::invalid_argument("state index out of range");
    if (mode == Mode::Count && w.get_den() != 1) throw std::invalid_argument("counting weights must be integers");
  }
  if (mode == Mode::Prob && total() != 1) throw std::invalid_argument("weights do not sum to 1");
  if (mode == Mode::Count && total() <= 0) throw std::invalid_argument("counting model has zero total");
}

bool operator==(const Model& a, const Model& b) {
  if (a.letters != b.letters || a.mode != b.mode) return false;
  for (StateIndex s = 0; s < a.state_count(); ++s)
    if (a.weight(s) != b.weight(s)) return false;
  return true;
}

Model model_from_vector(const std::vector<std::string>& letters, const std::vector<Rational>& w) {
  Model m{letters, {}, Mode::Prob};
  if (w.size() != m.state_count()) throw std::invalid_argument("weight vector size mismatch");
  for (std::size_t s = 0; s < w.size(); ++s)
    if (w[s] != 0) m.weights[s] = w[s];
  return m;
}

std::vector<Rational> dense_weights(const Model& m) {
  std::vector<Rational> w(m.state_count());
  for (const auto& [s, v] : m.weights) w[s] = v;
  return w;
}

LetterIndex::LetterIndex(const std::vector<std::string>& letters) {
  for (std::size_t j = 0; j < letters.size(); ++j) idx_.emplace(letters[j], j);
}

std::size_t LetterIndex::at(const std::string& name) const {
  auto it = idx_.find(name);
  if (it == idx_.end()) throw UnknownLetter("unknown letter: " + name);
  return it->second;
}

bool holds(const BoolExpr& e, StateIndex s, const LetterIndex& li) {
  switch (e.kind()) {
    case BoolExpr::Kind::Top: return true;
    case BoolExpr::Kind::Bot: return false;
    case BoolExpr::Kind::Letter: return letter_true(s, li.at(e.name()));
    case BoolExpr::Kind::Not: return !holds(e.lhs(), s, li);
    case BoolExpr::Kind::And: return holds(e.lhs(), s, li) && holds(e.rhs(), s, li);
    case BoolExpr::Kind::Or: return holds(e.lhs(), s, li) || holds(e.rhs(), s, li);
  }
  return false;
}

namespace {

std::vector<bool> table_rec(const BoolExpr& e, const LetterIndex& li, std::size_t n) {
  std::size_t N = std::size_t{1} << n;
  switch (e.kind()) {
    case BoolExpr::Kind::Top: return std::vector<bool>(N, true);
    case BoolExpr::Kind::Bot: return std::vector<bool>(N, false);
    case BoolExpr::Kind::Letter: {
      std::size_t j = li.at(e.name());
      std::vector<bool> t(N);
      for (std::size_t s = 0; s < N; ++s) t[s] = letter_true(s, j);
      return t;
    }
    case BoolExpr::Kind::Not: {
      auto t = table_rec(e.lhs(), li, n);
      t.flip();
      return t;
    }
    default: {
      auto a = table_rec(e.lhs(), li, n);
      auto b = table_rec(e.rhs(), li, n);
      bool is_and = e.kind() == BoolExpr::Kind::And;
      for (std::size_t s = 0; s < N; ++s) a[s] = is_and ? (a[s] && b[s]) : (a[s] || b[s]);
      return a;
    }
  }
}

}  // namespace

std::vector<bool> truth_table(const BoolExpr& e, const std::vector<std::string>& letters) {
  return table_rec(e, LetterIndex(letters), letters.size());
}

bool is_tautology(const BoolExpr& e) {
  auto letters = free_letters(e);
  for (bool b : truth_table(e, letters))
    if (!b) return false;
  return true;
}

Rational prob(const Model& m, const BoolExpr& b) {
  LetterIndex li(m.letters);
  for (const auto& l : free_letters(b))
    if (!li.contains(l)) throw UnknownLetter("unknown letter: " + l);
  Rational sum = 0;
  for (const auto& [s, w] : m.weights)
    if (w != 0 && holds(b, s, li)) sum += w;
  if (m.mode == Mode::Count) sum /= m.total();
  return sum;
}

Rational eval_term(const Model& m, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Basic: return prob(m, t.event());
    case Term::Kind::Cond: throw CondNotEvaluable("conditional terms are only evaluated inside comparisons");
    case Term::Kind::Sum: return eval_term(m, t.lhs()) + eval_term(m, t.rhs());
    case Term::Kind::Prod: return eval_term(m, t.lhs()) * eval_term(m, t.rhs());
  }
  return 0;
}

Fraction eval_fraction(const Model& m, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Basic: return {prob(m, t.event()), 1};
    case Term::Kind::Cond:
      return {prob(m, BoolExpr::conj(t.event(), t.given())), prob(m, t.given())};
    case Term::Kind::Sum: {
      Fraction a = eval_fraction(m, t.lhs()), b = eval_fraction(m, t.rhs());
      return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    case Term::Kind::Prod: {
      Fraction a = eval_fraction(m, t.lhs()), b = eval_fraction(m, t.rhs());
      return {a.num * b.num, a.den * b.den};
    }
  }
  return {0, 1};
}

bool satisfies(const Model& m, const Atom& a) {
  if (a.kind == Atom::Kind::Indep) {
    Rational ab = prob(m, BoolExpr::conj(a.events[0], a.events[1]));
    return ab == prob(m, a.events[0]) * prob(m, a.events[1]);
  }
  Fraction l = eval_fraction(m, a.lhs());
  Fraction r = eval_fraction(m, a.rhs());
  Rational x = l.num * r.den, y = r.num * l.den;
  switch (a.rel) {
    case Rel::Geq: return x >= y;
    case Rel::Gt: return x > y;
    case Rel::Eq: return x == y;
  }
  return false;
}

bool satisfies(const Model& m, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return satisfies(m, f.atom_value());
    case Formula::Kind::Not: return !satisfies(m, f.lhs());
    case Formula::Kind::And: return satisfies(m, f.lhs()) && satisfies(m, f.rhs());
    case Formula::Kind::Or: return satisfies(m, f.lhs()) || satisfies(m, f.rhs());
    case Formula::Kind::Implies: return !satisfies(m, f.lhs()) || satisfies(m, f.rhs());
  }
  return false;
}

namespace {

Rational raw_sum(const Model& m, const Term& t, const LetterIndex& li) {
  if (t.kind() == Term::Kind::Sum) return raw_sum(m, t.lhs(), li) + raw_sum(m, t.rhs(), li);
  Rational s = 0;
  for (const auto& [st, w] : m.weights)
    if (w != 0 && holds(t.event(), st, li)) s += w;
  return s;
}

bool counting_rec(const Model& m, const Formula& f, const LetterIndex& li) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Atom& a = f.atom_value();
      Rational x = raw_sum(m, a.lhs(), li), y = raw_sum(m, a.rhs(), li);
      return a.rel == Rel::Geq ? x >= y : a.rel == Rel::Gt ? x > y : x == y;
    }
    case Formula::Kind::Not: return !counting_rec(m, f.lhs(), li);
    case Formula::Kind::And: return counting_rec(m, f.lhs(), li) && counting_rec(m, f.rhs(), li);
    case Formula::Kind::Or: return counting_rec(m, f.lhs(), li) || counting_rec(m, f.rhs(), li);
    case Formula::Kind::Implies: return !counting_rec(m, f.lhs(), li) || counting_rec(m, f.rhs(), li);
  }
  return false;
}

}  // namespace

bool eval_counting(const Model& m, const Formula& f) {
  if (!generable(f, Lang::Add)) throw WrongFragment("counting semantics covers additive formulas only");
  LetterIndex li(m.letters);
  for (const auto& l : free_letters(f))
    if (!li.contains(l)) throw UnknownLetter("unknown letter: " + l);
  return counting_rec(m, f, li);
}

Model uniform_model(const std::vector<std::string>& letters) {
  Model m{letters, {}, Mode::Prob};
  Rational w(1, static_cast<unsigned long>(m.state_count()));
  for (StateIndex s = 0; s < m.state_count(); ++s) m.weights[s] = w;
  return m;
}

}  // namespace probcalc
