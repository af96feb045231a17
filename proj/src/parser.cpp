#include <cctype>

#include "probcalc/syntax.hpp"

namespace probcalc {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

enum class Tok {
  Ident, Zero, One, LParen, RParen, Comma, Tilde, Amp, Bar, CondBar, Plus, Star,
  Geq, Gt, Eq, Bang, AndAnd, OrOr, Implies, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(c)) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    auto two = s.substr(i, 2);
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, s.substr(i, len), start});
      i += len;
    };
    if (two == "|:") push(Tok::CondBar, 2);
    else if (two == "||") push(Tok::OrOr, 2);
    else if (two == "&&") push(Tok::AndAnd, 2);
    else if (two == ">=") push(Tok::Geq, 2);
    else if (two == "=>") push(Tok::Implies, 2);
    else if (c == '|') push(Tok::Bar, 1);
    else if (c == '&') push(Tok::Amp, 1);
    else if (c == '>') push(Tok::Gt, 1);
    else if (c == '=') push(Tok::Eq, 1);
    else if (c == '~') push(Tok::Tilde, 1);
    else if (c == '!') push(Tok::Bang, 1);
    else if (c == '(') push(Tok::LParen, 1);
    else if (c == ')') push(Tok::RParen, 1);
    else if (c == ',') push(Tok::Comma, 1);
    else if (c == '+') push(Tok::Plus, 1);
    else if (c == '*') push(Tok::Star, 1);
    else if (c == '0') push(Tok::Zero, 1);
    else if (c == '1') push(Tok::One, 1);
    else throw ParseError(std::string("unknown token '") + s[i] + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Formula formula_eof() {
    Formula f = implication();
    expect_end();
    return f;
  }
  BoolExpr bool_eof() {
    BoolExpr b = bool_or();
    expect_end();
    return b;
  }
  Term term_eof() {
    Term t = term_sum();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[i_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Tok::End ? " but found end of input" : " but found '" + t.text + "'"),
                     t.pos);
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    ++i_;
  }
  void expect_end() {
    if (!at(Tok::End)) fail("expected end of input");
  }

  Formula implication() {
    Formula l = disjunction();
    if (at(Tok::Implies)) {
      ++i_;
      return Formula::implies(l, implication());
    }
    return l;
  }
  Formula disjunction() {
    Formula l = conjunction();
    while (at(Tok::OrOr)) {
      ++i_;
      l = Formula::disj(l, conjunction());
    }
    return l;
  }
  Formula conjunction() {
    Formula l = unary();
    while (at(Tok::AndAnd)) {
      ++i_;
      l = Formula::conj(l, unary());
    }
    return l;
  }
  Formula unary() {
    if (at(Tok::Bang)) {
      ++i_;
      return Formula::negate(unary());
    }
    return primary();
  }
  Formula primary() {
    std::size_t save = i_;
    try {
      return Formula::atom(atom());
    } catch (const ParseError& first) {
      if (toks_[save].kind != Tok::LParen) throw;
      std::size_t atom_fail = i_;
      i_ = save + 1;
      try {
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError& second) {
        // Report whichever attempt got further.
        if (second.position >= first.position) throw;
        i_ = atom_fail;
        throw first;
      }
    }
  }

  Atom atom() {
    if (at(Tok::Ident) && peek().text == "indep" && peek(1).kind == Tok::LParen) {
      i_ += 2;
      BoolExpr a = bool_or();
      expect(Tok::Comma, "','");
      BoolExpr b = bool_or();
      expect(Tok::RParen, "')'");
      return Atom::indep(a, b);
    }
    Term l = term_sum();
    Rel rel;
    if (at(Tok::Geq)) rel = Rel::Geq;
    else if (at(Tok::Gt)) rel = Rel::Gt;
    else if (at(Tok::Eq)) rel = Rel::Eq;
    else fail("expected '>=', '>' or '='");
    ++i_;
    Term r = term_sum();
    switch (rel) {
      case Rel::Geq: return Atom::geq(l, r);
      case Rel::Gt: return Atom::gt(l, r);
      default: return Atom::eq(l, r);
    }
  }

  Term term_sum() {
    Term l = term_prod();
    while (at(Tok::Plus)) {
      ++i_;
      l = Term::sum(l, term_prod());
    }
    return l;
  }
  Term term_prod() {
    Term l = term_primary();
    while (at(Tok::Star)) {
      ++i_;
      l = Term::prod(l, term_primary());
    }
    return l;
  }
  Term term_primary() {
    if (at(Tok::Zero)) {
      ++i_;
      return Term::zero();
    }
    if (at(Tok::One)) {
      ++i_;
      return Term::one();
    }
    if (at(Tok::Ident) && peek().text == "P" && peek(1).kind == Tok::LParen) {
      i_ += 2;
      BoolExpr a = bool_or();
      if (at(Tok::CondBar)) {
        ++i_;
        BoolExpr b = bool_or();
        expect(Tok::RParen, "')'");
        return Term::cond(a, b);
      }
      expect(Tok::RParen, "')'");
      return Term::basic(a);
    }
    if (at(Tok::LParen)) {
      ++i_;
      Term t = term_sum();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a probability term");
  }

  BoolExpr bool_or() {
    BoolExpr l = bool_and();
    while (at(Tok::Bar)) {
      ++i_;
      l = BoolExpr::disj(l, bool_and());
    }
    return l;
  }
  BoolExpr bool_and() {
    BoolExpr l = bool_not();
    while (at(Tok::Amp)) {
      ++i_;
      l = BoolExpr::conj(l, bool_not());
    }
    return l;
  }
  BoolExpr bool_not() {
    if (at(Tok::Tilde)) {
      ++i_;
      return BoolExpr::negate(bool_not());
    }
    if (at(Tok::LParen)) {
      ++i_;
      BoolExpr b = bool_or();
      expect(Tok::RParen, "')'");
      return b;
    }
    if (at(Tok::Ident)) {
      std::string name = take().text;
      if (name == "T") return BoolExpr::top();
      if (name == "F") return BoolExpr::bot();
      return BoolExpr::letter(name);
    }
    fail("expected a Boolean expression");
  }
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).formula_eof(); }
BoolExpr parse_bool(const std::string& text) { return Parser(text).bool_eof(); }
Term parse_term(const std::string& text) { return Parser(text).term_eof(); }

}  // namespace probcalc
