#include "probcalc/normalize.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace probcalc {

const char* rel_symbol(RowRel r) {
  switch (r) {
    case RowRel::Eq: return "=";
    case RowRel::Geq: return ">=";
    case RowRel::Gt: return ">";
    case RowRel::Neq: return "!=";
  }
  return "?";
}

std::vector<std::string> state_descriptions(const std::vector<std::string>& letters) {
  std::vector<std::string> out;
  std::size_t n = std::size_t{1} << letters.size();
  out.reserve(n);
  for (StateIndex s = 0; s < n; ++s) out.push_back(state_name(s, letters));
  return out;
}

// ---- DNF ----

namespace {

using Dnf = std::vector<Conjunct>;

Dnf cross(const Dnf& a, const Dnf& b) {
  Dnf out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      Conjunct c = x;
      for (const auto& lit : y) {
        bool dup = false;
        for (const auto& e : c)
          if (e.positive == lit.positive && e.atom == lit.atom) dup = true;
        if (!dup) c.push_back(lit);
      }
      out.push_back(std::move(c));
    }
  return out;
}

Dnf join(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Dnf dnf_of(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Atom& a = f.atom_value();
      if (positive) return {{Literal{a, true}}};
      if (a.kind == Atom::Kind::Indep) return {{Literal{a, false}}};
      switch (a.rel) {
        case Rel::Geq: return {{Literal{Atom::gt(a.rhs(), a.lhs()), true}}};
        case Rel::Gt: return {{Literal{Atom::geq(a.rhs(), a.lhs()), true}}};
        case Rel::Eq:
          return {{Literal{Atom::gt(a.lhs(), a.rhs()), true}}, {Literal{Atom::gt(a.rhs(), a.lhs()), true}}};
      }
      return {};
    }
    case Formula::Kind::Not: return dnf_of(f.lhs(), !positive);
    case Formula::Kind::And:
      return positive ? cross(dnf_of(f.lhs(), true), dnf_of(f.rhs(), true))
                      : join(dnf_of(f.lhs(), false), dnf_of(f.rhs(), false));
    case Formula::Kind::Or:
      return positive ? join(dnf_of(f.lhs(), true), dnf_of(f.rhs(), true))
                      : cross(dnf_of(f.lhs(), false), dnf_of(f.rhs(), false));
    case Formula::Kind::Implies:
      return positive ? join(dnf_of(f.lhs(), false), dnf_of(f.rhs(), true))
                      : cross(dnf_of(f.lhs(), true), dnf_of(f.rhs(), false));
  }
  return {};
}

}  // namespace

std::vector<Conjunct> dnf(const Formula& f) { return dnf_of(f, true); }

Formula conjunct_formula(const Conjunct& c) {
  std::vector<Formula> parts;
  for (const auto& l : c) {
    Formula a = Formula::atom(l.atom);
    parts.push_back(l.positive ? a : Formula::negate(a));
  }
  return Formula::conj_all(parts);
}

// ---- expansion ----

Poly event_poly(const BoolExpr& e, const std::vector<std::string>& letters) {
  auto table = truth_table(e, letters);
  Poly p;
  for (std::size_t s = 0; s < table.size(); ++s)
    if (table[s]) p += Poly::var(static_cast<Var>(s));
  return p;
}

std::pair<Poly, Poly> term_fraction(const Term& t, const std::vector<std::string>& letters) {
  switch (t.kind()) {
    case Term::Kind::Basic: return {event_poly(t.event(), letters), Poly(1)};
    case Term::Kind::Cond:
      return {event_poly(BoolExpr::conj(t.event(), t.given()), letters), event_poly(t.given(), letters)};
    case Term::Kind::Sum: {
      auto [an, ad] = term_fraction(t.lhs(), letters);
      auto [bn, bd] = term_fraction(t.rhs(), letters);
      if (ad == Poly(1) && bd == Poly(1)) return {an + bn, Poly(1)};
      return {an * bd + bn * ad, ad * bd};
    }
    case Term::Kind::Prod: {
      auto [an, ad] = term_fraction(t.lhs(), letters);
      auto [bn, bd] = term_fraction(t.rhs(), letters);
      return {an * bn, ad * bd};
    }
  }
  return {Poly(), Poly(1)};
}

PolyRow literal_row(const Literal& l, const std::vector<std::string>& letters) {
  const Atom& a = l.atom;
  if (a.kind == Atom::Kind::Indep) {
    Poly ab = event_poly(BoolExpr::conj(a.events[0], a.events[1]), letters);
    Poly pa = event_poly(a.events[0], letters), pb = event_poly(a.events[1], letters);
    return {ab - pa * pb, l.positive ? RowRel::Eq : RowRel::Neq};
  }
  if (!l.positive) throw std::invalid_argument("negated comparison literal; rewrite through dnf first");
  auto [ln, ld] = term_fraction(a.lhs(), letters);
  auto [rn, rd] = term_fraction(a.rhs(), letters);
  Poly p = ln * rd - rn * ld;
  RowRel rel = a.rel == Rel::Geq ? RowRel::Geq : a.rel == Rel::Gt ? RowRel::Gt : RowRel::Eq;
  return {p, rel};
}

std::optional<LinSystem> to_linear(const PolySystem& s) {
  LinSystem out;
  out.var_names = s.var_names;
  out.simplex = s.simplex;
  if (!s.simplex) return std::nullopt;
  for (const auto& r : s.rows) {
    if (r.rel == RowRel::Neq || r.p.degree() > 1) return std::nullopt;
    LinRow lr;
    lr.rel = r.rel;
    for (const auto& [m, c] : r.p.terms()) {
      if (m.empty()) lr.rhs = -c;
      else lr.coeffs[m[0].first] = c;
    }
    out.rows.push_back(std::move(lr));
  }
  return out;
}

PolySystem to_poly(const LinSystem& s) {
  PolySystem out;
  out.var_names = s.var_names;
  out.simplex = s.simplex;
  if (!s.simplex) throw std::invalid_argument("only simplex-domain linear systems convert");
  for (const auto& r : s.rows) {
    Poly p = Poly(-r.rhs);
    for (const auto& [v, c] : r.coeffs) p += Poly::var(v) * c;
    out.rows.push_back({p, r.rel});
  }
  return out;
}

Expansion expand(const Conjunct& c, const std::vector<std::string>& letters) {
  Expansion e;
  e.poly.var_names = state_descriptions(letters);
  e.poly.simplex = true;
  for (const auto& l : c) e.poly.rows.push_back(literal_row(l, letters));
  auto lin = to_linear(e.poly);
  if (lin) {
    e.linear = true;
    e.lin = std::move(*lin);
  }
  return e;
}

namespace {

bool rel_holds(const Rational& lhs, RowRel rel, const Rational& rhs) {
  switch (rel) {
    case RowRel::Eq: return lhs == rhs;
    case RowRel::Geq: return lhs >= rhs;
    case RowRel::Gt: return lhs > rhs;
    case RowRel::Neq: return lhs != rhs;
  }
  return false;
}

}  // namespace

bool row_holds(const LinRow& r, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [v, c] : r.coeffs) s += c * x.at(v);
  return rel_holds(s, r.rel, r.rhs);
}

bool row_holds(const PolyRow& r, const std::vector<Rational>& x) { return rel_holds(r.p.eval(x), r.rel, 0); }

bool system_holds(const LinSystem& s, const std::vector<Rational>& x) {
  if (x.size() != s.nvars()) return false;
  if (s.simplex) {
    Rational sum = 0;
    for (const auto& v : x) {
      if (v < 0) return false;
      sum += v;
    }
    if (sum != 1) return false;
  }
  for (const auto& r : s.rows)
    if (!row_holds(r, x)) return false;
  return true;
}

bool system_holds(const PolySystem& s, const std::vector<Rational>& x) {
  if (x.size() != s.nvars()) return false;
  if (s.simplex) {
    Rational sum = 0;
    for (const auto& v : x) {
      if (v < 0) return false;
      sum += v;
    }
    if (sum != 1) return false;
  } else {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < s.box.at(i).first || x[i] > s.box.at(i).second) return false;
  }
  for (const auto& r : s.rows)
    if (!row_holds(r, x)) return false;
  return true;
}

LinSystem materialize_simplex(const LinSystem& s) {
  LinSystem out = s;
  if (!s.simplex) return out;
  out.simplex = false;
  for (Var v = 0; v < s.nvars(); ++v) out.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Geq, 0});
  LinRow sum;
  sum.rel = RowRel::Eq;
  sum.rhs = 1;
  for (Var v = 0; v < s.nvars(); ++v) sum.coeffs[v] = 1;
  out.rows.push_back(sum);
  return out;
}

// ---- text format ----

namespace {

std::vector<std::string> bracketed(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back("x[" + n + "]");
  return out;
}

std::string header(const std::vector<std::string>& letters, const std::vector<std::string>& vars,
                   const char* domain) {
  std::ostringstream os;
  if (!letters.empty()) {
    os << "# letters:";
    for (const auto& l : letters) os << ' ' << l;
    os << '\n';
  }
  os << "# vars:";
  for (const auto& v : vars) os << ' ' << v;
  os << '\n';
  os << "# domain: " << domain << '\n';
  return os.str();
}

std::string lhs_text(const Poly& p, const std::vector<std::string>& names) {
  Poly q = p - Poly(p.constant());
  return q.to_string(names);
}

}  // namespace

std::string to_text(const LinSystem& s, const std::vector<std::string>& letters) {
  std::ostringstream os;
  os << header(letters, s.var_names, s.simplex ? "simplex" : "free");
  auto names = bracketed(s.var_names);
  for (const auto& r : s.rows) {
    Poly p;
    for (const auto& [v, c] : r.coeffs) p += Poly::var(v) * c;
    os << p.to_string(names) << ' ' << rel_symbol(r.rel) << ' ' << r.rhs.get_str() << '\n';
  }
  return os.str();
}

std::string to_text(const PolySystem& s, const std::vector<std::string>& letters) {
  std::ostringstream os;
  os << header(letters, s.var_names, s.simplex ? "simplex" : "box");
  if (!s.simplex)
    for (std::size_t i = 0; i < s.box.size(); ++i)
      os << "# box: " << s.var_names[i] << ' ' << s.box[i].first.get_str() << ' ' << s.box[i].second.get_str()
         << '\n';
  auto names = bracketed(s.var_names);
  for (const auto& r : s.rows) {
    Rational rhs = -r.p.constant();
    os << lhs_text(r.p, names) << ' ' << rel_symbol(r.rel) << ' ' << rhs.get_str() << '\n';
  }
  return os.str();
}

namespace {

struct RowParser {
  const std::string& s;
  std::size_t i = 0;
  std::vector<std::string>& vars;
  bool fixed_vars;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("system text: " + what + " in line '" + s + "'");
  }
  Var var_index(const std::string& name) {
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == name) return static_cast<Var>(k);
    if (fixed_vars) fail("unknown variable " + name);
    vars.push_back(name);
    return static_cast<Var>(vars.size() - 1);
  }
  Rational number() {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/' || s[i] == '.')) ++i;
    if (start == i) fail("expected number");
    return parse_rational(s.substr(start, i - start));
  }
  Poly factor() {
    ws();
    if (s.compare(i, 2, "x[") == 0) {
      std::size_t close = s.find(']', i);
      if (close == std::string::npos) fail("unterminated x[");
      std::string name = s.substr(i + 2, close - i - 2);
      i = close + 1;
      return Poly::var(var_index(name));
    }
    return Poly(number());
  }
  Poly monomial_term() {
    Poly t = factor();
    ws();
    while (i < s.size() && s[i] == '*') {
      ++i;
      t = t * factor();
      ws();
    }
    return t;
  }
  Poly sum() {
    Poly p = monomial_term();
    ws();
    while (i < s.size() && s[i] == '+') {
      ++i;
      p += monomial_term();
      ws();
    }
    return p;
  }
  RowRel rel() {
    ws();
    if (s.compare(i, 2, ">=") == 0) { i += 2; return RowRel::Geq; }
    if (s.compare(i, 2, "!=") == 0) { i += 2; return RowRel::Neq; }
    if (s.compare(i, 1, ">") == 0) { i += 1; return RowRel::Gt; }
    if (s.compare(i, 1, "=") == 0) { i += 1; return RowRel::Eq; }
    fail("expected relation");
  }
};

}  // namespace

PolySystem parse_poly_system(const std::string& text) {
  PolySystem out;
  std::istringstream is(text);
  std::string line;
  bool fixed = false;
  bool is_box = false;
  std::vector<std::tuple<std::string, Rational, Rational>> boxes;
  while (std::getline(is, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "vars:") {
        std::string v;
        while (hs >> v) out.var_names.push_back(v);
        fixed = true;
      } else if (key == "domain:") {
        std::string d;
        hs >> d;
        out.simplex = d == "simplex";
        out.box.clear();
        is_box = d == "box";
      } else if (key == "box:") {
        std::string name, lo, hi;
        hs >> name >> lo >> hi;
        boxes.emplace_back(name, parse_rational(lo), parse_rational(hi));
      }
      continue;
    }
    RowParser rp{line, 0, out.var_names, fixed};
    Poly lhs = rp.sum();
    RowRel rel = rp.rel();
    rp.ws();
    Poly rhs = rp.sum();
    rp.ws();
    if (rp.i != line.size()) rp.fail("trailing text");
    out.rows.push_back({lhs - rhs, rel});
  }
  if (is_box) {
    out.box.assign(out.var_names.size(), {Rational(0), Rational(1)});
    for (const auto& [name, lo, hi] : boxes)
      for (std::size_t k = 0; k < out.var_names.size(); ++k)
        if (out.var_names[k] == name) out.box[k] = {lo, hi};
  }
  return out;
}

LinSystem parse_lin_system(const std::string& text) {
  PolySystem p = parse_poly_system(text);
  if (!p.simplex) {
    LinSystem out;
    out.var_names = p.var_names;
    out.simplex = false;
    for (const auto& r : p.rows) {
      if (r.p.degree() > 1 || r.rel == RowRel::Neq) throw std::invalid_argument("system is not linear");
      LinRow lr;
      lr.rel = r.rel;
      for (const auto& [m, c] : r.p.terms()) {
        if (m.empty()) lr.rhs = -c;
        else lr.coeffs[m[0].first] = c;
      }
      out.rows.push_back(lr);
    }
    return out;
  }
  auto lin = to_linear(p);
  if (!lin) throw std::invalid_argument("system is not linear");
  return *lin;
}

}  // namespace probcalc
