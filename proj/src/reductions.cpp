#include "probcalc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace probcalc {

namespace {

Term strip_cond(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Basic: return t;
    case Term::Kind::Cond: return Term::basic(BoolExpr::conj(t.event(), t.given()));
    case Term::Kind::Sum: return Term::sum(strip_cond(t.lhs()), strip_cond(t.rhs()));
    case Term::Kind::Prod: return Term::prod(strip_cond(t.lhs()), strip_cond(t.rhs()));
  }
  return t;
}

Formula map_atoms(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Atom& a = f.atom_value();
      if (a.kind == Atom::Kind::Indep || !generable(a, Lang::SameCond))
        throw WrongFragment("atom outside same_cond: " + render(a));
      Atom b = a;
      b.sides = {strip_cond(a.lhs()), strip_cond(a.rhs())};
      return Formula::atom(b);
    }
    case Formula::Kind::Not: return Formula::negate(map_atoms(f.lhs()));
    case Formula::Kind::And: return Formula::conj(map_atoms(f.lhs()), map_atoms(f.rhs()));
    case Formula::Kind::Or: return Formula::disj(map_atoms(f.lhs()), map_atoms(f.rhs()));
    case Formula::Kind::Implies: return Formula::implies(map_atoms(f.lhs()), map_atoms(f.rhs()));
  }
  return f;
}

Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Term P(const BoolExpr& e) { return Term::basic(e); }
Formula eq(const Term& a, const Term& b) { return Formula::atom(Atom::eq(a, b)); }
BoolExpr L(const std::string& s) { return BoolExpr::letter(s); }

int bits_for(int cells) {
  int b = 0;
  while ((1 << b) < cells) ++b;
  return b;
}

Partition make_partition(const std::string& prefix, int cells) {
  Partition p;
  p.cells = cells;
  for (int b = 0; b < bits_for(cells); ++b) p.letters.push_back(prefix + std::to_string(b));
  return p;
}

BoolExpr code_expr(const Partition& p, int code) {
  BoolExpr e;
  for (std::size_t b = 0; b < p.letters.size(); ++b) {
    BoolExpr l = L(p.letters[b]);
    if (!((code >> b) & 1)) l = BoolExpr::negate(l);
    e = b == 0 ? l : BoolExpr::conj(e, l);
  }
  return e;
}

void partition_atoms(const Partition& p, std::vector<Formula>& out) {
  for (int c = 1; c < p.cells; ++c) out.push_back(eq(P(p.cell(c)), P(p.cell(0))));
}

std::string smt_rational(const Rational& q) {
  auto num = q.get_num(), den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  std::string body = den == 1 ? num.get_str() : "(/ " + num.get_str() + " " + den.get_str() + ")";
  return neg ? "(- " + body + ")" : body;
}

std::string smt_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.empty()) factors.push_back(smt_rational(c));
    for (const auto& [v, e] : m)
      for (unsigned k = 0; k < e; ++k) factors.push_back("x" + std::to_string(v));
    terms.push_back(factors.size() == 1 ? factors[0] : "(* " + [&] {
      std::string s;
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " " : "") + factors[i];
      return s;
    }() + ")");
  }
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string smt_row(const PolyRow& r) {
  std::string p = smt_poly(r.p);
  switch (r.rel) {
    case RowRel::Eq: return "(= " + p + " 0)";
    case RowRel::Geq: return "(>= " + p + " 0)";
    case RowRel::Gt: return "(> " + p + " 0)";
    case RowRel::Neq: return "(not (= " + p + " 0))";
  }
  return "";
}

void collect_events(const Term& t, std::set<std::vector<bool>>& out, const std::vector<std::string>& letters) {
  switch (t.kind()) {
    case Term::Kind::Basic: out.insert(truth_table(t.event(), letters)); break;
    case Term::Kind::Cond:
      out.insert(truth_table(BoolExpr::conj(t.event(), t.given()), letters));
      out.insert(truth_table(t.given(), letters));
      break;
    case Term::Kind::Sum:
    case Term::Kind::Prod:
      collect_events(t.lhs(), out, letters);
      collect_events(t.rhs(), out, letters);
      break;
  }
}

}  // namespace

Formula same_cond_to_comp(const Formula& f) { return map_atoms(f); }

// ---- inverse ETR ----

bool etr_holds(const EtrSystem& s, const std::vector<Rational>& x) {
  if (x.size() != static_cast<std::size_t>(s.n)) return false;
  for (const auto& v : x)
    if (v < ratio(1, 2) || v > 2) return false;
  for (const auto& c : s.constraints) {
    if (c.kind == EtrConstraint::Kind::Add ? x[c.i] + x[c.j] != x[c.k] : x[c.i] * x[c.j] != 1) return false;
  }
  return true;
}

double etr_residual(const EtrSystem& s, const std::vector<double>& x) {
  double r = 0;
  for (const auto& v : x) r = std::max({r, 0.5 - v, v - 2.0});
  for (const auto& c : s.constraints)
    r = std::max(r, std::abs(c.kind == EtrConstraint::Kind::Add ? x[c.i] + x[c.j] - x[c.k] : x[c.i] * x[c.j] - 1));
  return r;
}

PolySystem etr_to_poly(const EtrSystem& s) {
  PolySystem p;
  p.simplex = false;
  for (int i = 0; i < s.n; ++i) {
    p.var_names.push_back("x" + std::to_string(i + 1));
    p.box.emplace_back(ratio(1, 2), Rational(2));
  }
  for (const auto& c : s.constraints) {
    Poly r = c.kind == EtrConstraint::Kind::Add ? Poly::var(c.i) + Poly::var(c.j) - Poly::var(c.k)
                                                : Poly::var(c.i) * Poly::var(c.j) - Poly(1);
    p.rows.push_back({r, RowRel::Eq});
  }
  return p;
}

std::string etr_to_text(const EtrSystem& s) {
  std::ostringstream os;
  os << "vars " << s.n << '\n';
  for (const auto& c : s.constraints) {
    if (c.kind == EtrConstraint::Kind::Add)
      os << 'x' << c.i + 1 << " + x" << c.j + 1 << " = x" << c.k + 1 << '\n';
    else
      os << 'x' << c.i + 1 << " * x" << c.j + 1 << " = 1\n";
  }
  return os.str();
}

EtrSystem parse_etr(const std::string& text) {
  EtrSystem s;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  int declared = -1;
  auto var = [&](const std::string& tok, std::size_t pos) {
    if (tok.size() < 2 || tok[0] != 'x' || !std::all_of(tok.begin() + 1, tok.end(), ::isdigit))
      throw ParseError("expected a variable x<k>, got '" + tok + "'", pos);
    int v = std::stoi(tok.substr(1));
    if (v < 1) throw ParseError("variables are numbered from 1", pos);
    s.n = std::max(s.n, v);
    return v - 1;
  };
  while (std::getline(in, line)) {
    std::size_t here = offset;
    offset += line.size() + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "vars" && tok.size() == 2) {
      declared = std::stoi(tok[1]);
      continue;
    }
    if (tok.size() != 5 || tok[3] != "=") throw ParseError("expected 'xi + xj = xk' or 'xi * xj = 1'", here);
    EtrConstraint c;
    c.i = var(tok[0], here);
    c.j = var(tok[2], here);
    if (tok[1] == "+") {
      c.kind = EtrConstraint::Kind::Add;
      c.k = var(tok[4], here);
    } else if (tok[1] == "*") {
      if (tok[4] != "1") throw ParseError("products must equal 1", here);
      c.kind = EtrConstraint::Kind::Inv;
    } else {
      throw ParseError("unknown operator '" + tok[1] + "'", here);
    }
    s.constraints.push_back(c);
  }
  if (declared >= 0) {
    if (declared < s.n) throw ParseError("constraint uses a variable beyond the declared count", 0);
    s.n = declared;
  }
  return s;
}

EtrInstance random_etr(int n, int constraints, bool planted, std::uint64_t seed) {
  if (n < 1 || constraints < 0) throw std::invalid_argument("random_etr needs n >= 1");
  std::mt19937_64 rng(seed);
  auto pick = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
  EtrInstance inst;
  inst.system.n = n;
  if (!planted) {
    for (int c = 0; c < constraints; ++c) {
      EtrConstraint e;
      e.kind = rng() % 2 ? EtrConstraint::Kind::Add : EtrConstraint::Kind::Inv;
      e.i = pick(n);
      e.j = pick(n);
      e.k = pick(n);
      if (e.kind == EtrConstraint::Kind::Inv) e.k = 0;
      inst.system.constraints.push_back(e);
    }
    return inst;
  }
  static const std::vector<Rational> values{ratio(1, 2), ratio(2, 3), ratio(3, 4), Rational(1),
                                            ratio(4, 3), ratio(3, 2), Rational(2)};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = values[static_cast<std::size_t>(pick(static_cast<int>(values.size())))];
    std::vector<EtrConstraint> cs;
    for (int tries = 0; tries < 200 && static_cast<int>(cs.size()) < constraints; ++tries) {
      EtrConstraint e;
      e.kind = rng() % 2 ? EtrConstraint::Kind::Add : EtrConstraint::Kind::Inv;
      e.i = pick(n);
      e.j = pick(n);
      e.k = e.kind == EtrConstraint::Kind::Add ? pick(n) : 0;
      bool ok = e.kind == EtrConstraint::Kind::Add ? x[e.i] + x[e.j] == x[e.k] : x[e.i] * x[e.j] == 1;
      if (ok) cs.push_back(e);
    }
    if (static_cast<int>(cs.size()) == constraints) {
      inst.system.constraints = cs;
      inst.planted = x;
      return inst;
    }
  }
  throw std::runtime_error("could not plant a solution");
}

BoolExpr Partition::cell(int c) const {
  if (c < 0 || c >= cells) throw std::out_of_range("partition cell out of range");
  if (letters.empty()) return BoolExpr::top();
  Partition self = *this;
  if (c < cells - 1) return code_expr(self, c);
  BoolExpr e;
  bool any = false;
  for (int code = cells - 1; code < (1 << letters.size()); ++code) {
    e = any ? BoolExpr::disj(e, code_expr(self, code)) : code_expr(self, code);
    any = true;
  }
  return e;
}

IndEncoding etr_inverse_to_ind(const EtrSystem& s) {
  if (s.n < 1) throw std::invalid_argument("system needs at least one variable");
  for (const auto& c : s.constraints) {
    int hi = std::max({c.i, c.j, c.kind == EtrConstraint::Kind::Add ? c.k : 0});
    if (c.i < 0 || c.j < 0 || c.k < 0 || hi >= s.n) throw std::invalid_argument("constraint references a missing variable");
  }
  IndEncoding enc;
  const int n = s.n;
  enc.n = n;
  std::vector<Formula> parts;
  for (int i = 0; i < n; ++i) enc.delta.push_back("d" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) {
    BoolExpr d = L(enc.delta[i]);
    // 1/(4n) <= P(d): a cell of a 4n-partition inside d
    Partition lo = make_partition("lo" + std::to_string(i + 1) + "_", 4 * n);
    partition_atoms(lo, parts);
    parts.push_back(eq(P(BoolExpr::disj(d, lo.cell(0))), P(d)));
    enc.bounds.push_back({i, true, lo});
    // P(d) <= 1/n: d inside a cell of an n-partition
    if (n > 1) {
      Partition hi = make_partition("hi" + std::to_string(i + 1) + "_", n);
      partition_atoms(hi, parts);
      parts.push_back(eq(P(BoolExpr::conj(d, hi.cell(0))), P(d)));
      enc.bounds.push_back({i, false, hi});
    }
  }
  bool any_inv = std::any_of(s.constraints.begin(), s.constraints.end(),
                             [](const EtrConstraint& c) { return c.kind == EtrConstraint::Kind::Inv; });
  if (any_inv) {
    enc.constant = make_partition("k", 4 * n * n);
    partition_atoms(enc.constant, parts);
    parts.push_back(eq(P(L("kappa")), P(enc.constant.cell(0))));
  }
  for (std::size_t ci = 0; ci < s.constraints.size(); ++ci) {
    const auto& c = s.constraints[ci];
    IndEncoding::Pair pr{c, "", "", ""};
    BoolExpr di = L(enc.delta[c.i]), dj = L(enc.delta[c.j]);
    if (c.kind == EtrConstraint::Kind::Add) {
      pr.u = "u" + std::to_string(ci + 1);
      pr.v = "v" + std::to_string(ci + 1);
      BoolExpr u = L(pr.u), v = L(pr.v);
      parts.push_back(eq(P(u), P(di)));
      parts.push_back(eq(P(v), P(dj)));
      parts.push_back(eq(P(BoolExpr::conj(u, v)), P(BoolExpr::bot())));
      parts.push_back(eq(P(BoolExpr::disj(u, v)), P(L(enc.delta[c.k]))));
    } else {
      BoolExpr other = dj;
      if (c.i == c.j) {
        pr.copy = "c" + std::to_string(ci + 1);
        other = L(pr.copy);
        parts.push_back(eq(P(other), P(di)));
      }
      parts.push_back(Formula::atom(Atom::indep(di, other)));
      parts.push_back(eq(P(BoolExpr::conj(di, other)), P(L("kappa"))));
    }
    enc.pairs.push_back(pr);
  }
  enc.atoms = parts.size();
  enc.formula = Formula::conj_all(parts);
  return enc;
}

namespace {

// One coupled block: letters and, per delta-state, a distribution over
// assignments (bit b set = letter b true).
struct Block {
  std::vector<std::string> letters;
  std::function<std::vector<std::pair<std::uint32_t, Rational>>(StateIndex)> dist;
};

std::vector<std::pair<std::uint32_t, Rational>> partition_dist(const Partition& p,
                                                               const std::vector<Rational>& cell_mass) {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  for (int c = 0; c < p.cells; ++c)
    if (cell_mass[c] != 0) out.emplace_back(static_cast<std::uint32_t>(c), cell_mass[c]);
  return out;
}

}  // namespace

Model transport_forward(const IndEncoding& enc, const std::vector<Rational>& x) {
  const int n = enc.n;
  if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("witness size mismatch");
  std::vector<Rational> p(x.size());
  for (int i = 0; i < n; ++i) {
    p[i] = x[i] / Rational(2 * n);
    if (x[i] < ratio(1, 2) || x[i] > 2) throw std::invalid_argument("witness outside [1/2, 2]");
  }
  auto dtrue = [](StateIndex s, int i) { return letter_true(s, static_cast<std::size_t>(i)); };
  std::vector<Block> blocks;
  for (const auto& b : enc.bounds) {
    const int N = b.part.cells;
    const int i = b.var;
    const Rational cellw = Rational(1) / Rational(N);
    Partition part = b.part;
    Rational pi = p[i];
    blocks.push_back({part.letters, [=](StateIndex s) {
                        std::vector<Rational> m(static_cast<std::size_t>(N));
                        bool in = dtrue(s, i);
                        if (b.lower) {
                          // cell 0 inside d
                          Rational q0 = in ? cellw / pi : Rational(0);
                          m[0] = q0;
                          for (int c = 1; c < N; ++c) m[c] = (in ? 1 - q0 : Rational(1)) / Rational(N - 1);
                        } else {
                          // d inside cell 0
                          Rational r = in ? Rational(1) : (cellw - pi) / (1 - pi);
                          m[0] = r;
                          for (int c = 1; c < N; ++c) m[c] = (1 - r) / Rational(N - 1);
                        }
                        return partition_dist(part, m);
                      }});
  }
  if (!enc.constant.letters.empty() || enc.constant.cells > 1) {
    const int N = enc.constant.cells;
    Partition part = enc.constant;
    auto letters = part.letters;
    letters.push_back("kappa");
    const std::uint32_t kbit = std::uint32_t{1} << part.letters.size();
    blocks.push_back({letters, [=](StateIndex) {
                        std::vector<std::pair<std::uint32_t, Rational>> out;
                        for (int c = 0; c < N; ++c)
                          out.emplace_back(static_cast<std::uint32_t>(c) | (c == 0 ? kbit : 0u), Rational(1) / Rational(N));
                        return out;
                      }});
  }
  for (const auto& pr : enc.pairs) {
    if (!pr.u.empty()) {
      Rational a = p[pr.c.i], b = p[pr.c.j];
      blocks.push_back({{pr.u, pr.v}, [=](StateIndex) {
                          std::vector<std::pair<std::uint32_t, Rational>> out;
                          if (a != 0) out.emplace_back(1u, a);
                          if (b != 0) out.emplace_back(2u, b);
                          if (a + b != 1) out.emplace_back(0u, 1 - a - b);
                          return out;
                        }});
    } else if (!pr.copy.empty()) {
      Rational a = p[pr.c.i];
      blocks.push_back({{pr.copy}, [=](StateIndex) {
                          std::vector<std::pair<std::uint32_t, Rational>> out{{1u, a}};
                          if (a != 1) out.emplace_back(0u, 1 - a);
                          return out;
                        }});
    }
  }
  Model m;
  m.letters = enc.delta;
  std::vector<std::size_t> offset;
  for (const auto& b : blocks) {
    offset.push_back(m.letters.size());
    m.letters.insert(m.letters.end(), b.letters.begin(), b.letters.end());
  }
  if (m.letters.size() > 63) throw std::invalid_argument("encoding has too many letters for an explicit model");
  for (StateIndex ds = 0; ds < (StateIndex{1} << n); ++ds) {
    Rational w = 1;
    for (int i = 0; i < n; ++i) w *= dtrue(ds, i) ? p[i] : 1 - p[i];
    if (w == 0) continue;
    // comonotone coupling of the blocks inside this delta-state
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> d;
    for (const auto& b : blocks) d.push_back(b.dist(ds));
    std::vector<std::size_t> idx(blocks.size(), 0);
    std::vector<Rational> left(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) left[b] = d[b].at(0).second;
    Rational remaining = 1;
    while (remaining > 0) {
      Rational step = remaining;
      for (const auto& l : left) step = std::min(step, l);
      StateIndex st = ds;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::uint32_t a = d[b][idx[b]].first;
        for (std::size_t j = 0; j < blocks[b].letters.size(); ++j)
          if (!((a >> j) & 1u)) st |= StateIndex{1} << (offset[b] + j);
      }
      if (step > 0) m.weights[st] += w * step;
      remaining -= step;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        left[b] -= step;
        if (left[b] == 0 && idx[b] + 1 < d[b].size()) left[b] = d[b][++idx[b]].second;
      }
    }
  }
  return m;
}

std::vector<Rational> transport_backward(const IndEncoding& enc, const Model& m) {
  std::vector<Rational> x;
  for (const auto& d : enc.delta) x.push_back(Rational(2 * enc.n) * prob(m, L(d)));
  return x;
}

// ---- membership ----

EtrSentence poly_to_etr(const Formula& f) {
  EtrSentence out;
  out.letters = free_letters(f);
  std::set<std::vector<bool>> events;
  for (const auto& a : atoms_of(f)) {
    if (a.kind == Atom::Kind::Indep) {
      for (const auto& e : a.events) events.insert(truth_table(e, out.letters));
      events.insert(truth_table(BoolExpr::conj(a.events[0], a.events[1]), out.letters));
    } else {
      for (const auto& t : a.sides) collect_events(t, events, out.letters);
    }
  }
  out.event_count = events.size();
  for (const auto& c : dnf(f)) out.systems.push_back(expand(c, out.letters).poly);
  auto names = state_descriptions(out.letters);
  const std::size_t k = names.size();
  std::ostringstream smt, plain;
  smt << "(set-logic QF_NRA)\n";
  for (std::size_t v = 0; v < k; ++v) smt << "(declare-fun x" << v << " () Real) ; " << names[v] << '\n';
  for (std::size_t v = 0; v < k; ++v) smt << "(assert (>= x" << v << " 0))\n";
  smt << "(assert (= (+";
  for (std::size_t v = 0; v < k; ++v) smt << " x" << v;
  if (k == 1) smt << " 0";
  smt << ") 1))\n(assert (or";
  plain << "exists";
  for (const auto& nm : names) plain << " x_" << nm;
  plain << " >= 0 with sum 1:\n";
  std::vector<std::string> pnames;
  for (const auto& nm : names) pnames.push_back("x_" + nm);
  for (std::size_t d = 0; d < out.systems.size(); ++d) {
    smt << "\n  (and true";
    plain << (d ? "  or\n" : "");
    const auto& sys = out.systems[d];
    if (sys.rows.empty()) plain << "  true\n";
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      smt << ' ' << smt_row(sys.rows[r]);
      plain << (r ? "  and " : "  ") << sys.rows[r].p.to_string(pnames) << ' ' << rel_symbol(sys.rows[r].rel)
            << " 0\n";
    }
    smt << ')';
  }
  if (out.systems.empty()) {
    smt << " false";
    plain << "  false\n";
  }
  smt << "))\n(check-sat)\n";
  out.smtlib = smt.str();
  out.plain = plain.str();
  return out;
}

std::vector<std::vector<Var>> support_candidates(std::size_t states, std::size_t max_size) {
  std::vector<std::vector<Var>> out;
  std::vector<Var> cur;
  for (std::size_t size = 1; size <= std::min(states, max_size); ++size) {
    std::function<void(Var)> rec = [&](Var start) {
      if (cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (Var v = start; v < states; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

PolySystem restrict_to_support(const PolySystem& s, const std::vector<Var>& support) {
  std::map<Var, Var> rename;
  PolySystem out;
  out.simplex = s.simplex;
  for (std::size_t i = 0; i < support.size(); ++i) {
    rename[support[i]] = static_cast<Var>(i);
    out.var_names.push_back(s.var_names.at(support[i]));
    if (!s.simplex) out.box.push_back(s.box.at(support[i]));
  }
  for (const auto& r : s.rows) {
    Poly p = r.p;
    for (Var v : r.p.vars())
      if (!rename.count(v)) p = p.substitute(v, Poly(0));
    out.rows.push_back({p.rename(rename), r.rel});
  }
  return out;
}

SupportVerdict sat_by_support(const Formula& f, const PolyBudget& b) {
  EtrSentence e = poly_to_etr(f);
  SupportVerdict out;
  const std::size_t states = std::size_t{1} << e.letters.size();
  const std::size_t size = std::min(states, std::max<std::size_t>(e.event_count, 1));
  bool all_unsat = true;
  std::optional<SupportVerdict> numeric;
  std::vector<std::vector<Var>> cands;
  for (const auto& c : support_candidates(states, size))
    if (c.size() == size) cands.push_back(c);
  for (std::size_t d = 0; d < e.systems.size(); ++d) {
    for (const auto& sup : cands) {
      ++out.supports_tried;
      SystemVerdict v = solve_system(restrict_to_support(e.systems[d], sup), b);
      if (v.kind == PolyVerdict::Kind::SatRational) {
        out.kind = v.kind;
        out.support = sup;
        out.disjunct = d;
        out.point.assign(states, Rational(0));
        for (std::size_t i = 0; i < sup.size(); ++i) out.point[sup[i]] = v.point[i];
        return out;
      }
      if (v.kind == PolyVerdict::Kind::SatNumeric && !numeric) {
        SupportVerdict sv;
        sv.kind = v.kind;
        sv.support = sup;
        sv.disjunct = d;
        sv.numeric.assign(states, 0.0);
        for (std::size_t i = 0; i < sup.size(); ++i) sv.numeric[sup[i]] = v.numeric.x[i];
        numeric = sv;
      }
      if (v.kind != PolyVerdict::Kind::UnsatCertified) all_unsat = false;
    }
  }
  if (numeric) {
    numeric->supports_tried = out.supports_tried;
    return *numeric;
  }
  out.kind = all_unsat ? PolyVerdict::Kind::UnsatCertified : PolyVerdict::Kind::Unknown;
  return out;
}

}  // namespace probcalc
