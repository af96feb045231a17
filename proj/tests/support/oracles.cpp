#include "support/oracles.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

using namespace probcalc;

namespace {

bool eval_skeleton(const Formula& f, const std::vector<Atom>& atoms, const std::vector<bool>& v) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == f.atom_value()) return v[i];
      throw std::logic_error("atom not listed");
    case Formula::Kind::Not: return !eval_skeleton(f.lhs(), atoms, v);
    case Formula::Kind::And: return eval_skeleton(f.lhs(), atoms, v) && eval_skeleton(f.rhs(), atoms, v);
    case Formula::Kind::Or: return eval_skeleton(f.lhs(), atoms, v) || eval_skeleton(f.rhs(), atoms, v);
    case Formula::Kind::Implies: return !eval_skeleton(f.lhs(), atoms, v) || eval_skeleton(f.rhs(), atoms, v);
  }
  return false;
}

// Linear form of an additive term over the states.
void term_row(const Term& t, const std::vector<std::string>& letters, Rational sign, std::vector<Rational>& row) {
  switch (t.kind()) {
    case Term::Kind::Basic: {
      auto tt = truth_table(t.event(), letters);
      for (std::size_t s = 0; s < tt.size(); ++s)
        if (tt[s]) row[s] += sign;
      return;
    }
    case Term::Kind::Sum:
      term_row(t.lhs(), letters, sign, row);
      term_row(t.rhs(), letters, sign, row);
      return;
    default: throw std::invalid_argument("oracle handles additive terms only");
  }
}

enum class R { Ge, Gt, Eq };
struct Row {
  std::vector<Rational> a;  // a . x  R  0
  R rel;
};

// Solves M y = r exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> r) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(r[p], r[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      r[i] -= f * r[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) r[i] /= m[i][i];
  return r;
}

// max t over {x >= 0, sum x = 1, rows with strict ones as a.x >= t, t <= 1};
// variables y = (x, t). Returns the best vertex.
std::optional<std::vector<Rational>> best_vertex(const std::vector<Row>& rows, std::size_t d, bool has_strict) {
  const std::size_t nv = d + 1;
  std::vector<std::vector<Rational>> eqs, ineqs;  // coefficient vectors over y, rhs 0 unless noted
  std::vector<Rational> eq_rhs, in_rhs;
  std::vector<Rational> sum(nv, 0);
  for (std::size_t s = 0; s < d; ++s) sum[s] = 1;
  eqs.push_back(sum);
  eq_rhs.push_back(1);
  for (const auto& r : rows) {
    std::vector<Rational> v(r.a);
    v.push_back(r.rel == R::Gt ? Rational(-1) : Rational(0));
    if (r.rel == R::Eq) {
      eqs.push_back(v);
      eq_rhs.push_back(0);
    } else {
      ineqs.push_back(v);
      in_rhs.push_back(0);
    }
  }
  for (std::size_t s = 0; s < d; ++s) {
    std::vector<Rational> v(nv, 0);
    v[s] = 1;
    ineqs.push_back(v);
    in_rhs.push_back(0);
  }
  {
    std::vector<Rational> v(nv, 0);
    v[d] = -1;  // -t >= -1
    ineqs.push_back(v);
    in_rhs.push_back(-1);
  }
  if (!has_strict) {
    std::vector<Rational> v(nv, 0);
    v[d] = 1;  // t >= 0, pins t to a bounded range
    ineqs.push_back(v);
    in_rhs.push_back(0);
  }
  auto feasible = [&](const std::vector<Rational>& y) {
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < nv; ++j) s += eqs[i][j] * y[j];
      if (s != eq_rhs[i]) return false;
    }
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < nv; ++j) s += ineqs[i][j] * y[j];
      if (s < in_rhs[i]) return false;
    }
    return true;
  };
  // Keep an independent subset of the equalities; a dependent one with a
  // different right-hand side makes the system infeasible.
  {
    std::vector<std::vector<Rational>> basis, keep;
    std::vector<Rational> basis_rhs, keep_rhs;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      std::vector<Rational> v = eqs[i];
      Rational r = eq_rhs[i];
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (v[pivots[k]] == 0) continue;
        Rational f = v[pivots[k]] / basis[k][pivots[k]];
        for (std::size_t j = 0; j < nv; ++j) v[j] -= f * basis[k][j];
        r -= f * basis_rhs[k];
      }
      std::size_t p = 0;
      while (p < nv && v[p] == 0) ++p;
      if (p == nv) {
        if (r != 0) return std::nullopt;
        continue;
      }
      basis.push_back(v);
      basis_rhs.push_back(r);
      pivots.push_back(p);
      keep.push_back(eqs[i]);
      keep_rhs.push_back(eq_rhs[i]);
    }
    eqs = keep;
    eq_rhs = keep_rhs;
  }
  // Floating-point screen; exact arithmetic decides every candidate it keeps.
  auto maybe_feasible = [&](const std::vector<std::vector<Rational>>& m, const std::vector<Rational>& r) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_d();
      a[i][n] = r[i].get_d();
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
      if (std::abs(a[p][c]) < 1e-9) return true;  // let the exact solver judge
      std::swap(a[p], a[c]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c) continue;
        double f = a[i][c] / a[c][c];
        for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
      }
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i][n] / a[i][i];
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      double s = 0;
      for (std::size_t j = 0; j < nv; ++j) s += ineqs[i][j].get_d() * y[j];
      if (s < in_rhs[i].get_d() - 1e-7) return false;
    }
    return true;
  };
  // Every vertex: the equalities plus nv - |eqs| tight inequalities.
  std::optional<std::vector<Rational>> best;
  auto done = [&] { return best && (!has_strict || (*best)[d] > 0); };
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t need) {
    if (need == 0) {
      std::vector<std::vector<Rational>> m(eqs.begin(), eqs.end());
      std::vector<Rational> r(eq_rhs.begin(), eq_rhs.end());
      for (auto i : pick) {
        m.push_back(ineqs[i]);
        r.push_back(in_rhs[i]);
      }
      if (!maybe_feasible(m, r)) return;
      auto y = solve(m, r);
      if (y && feasible(*y) && (!best || (*y)[d] > (*best)[d])) best = y;
      return;
    }
    for (std::size_t i = start; i + need <= ineqs.size() && !done(); ++i) {
      pick.push_back(i);
      rec(i + 1, need - 1);
      pick.pop_back();
    }
  };
  rec(0, nv - eqs.size());
  return best;
}

}  // namespace

std::vector<std::vector<bool>> skeleton_models(const Formula& f) {
  auto atoms = atoms_of(f);
  std::vector<std::vector<bool>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m) {
    std::vector<bool> v(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) v[i] = (m >> i) & 1u;
    if (eval_skeleton(f, atoms, v)) out.push_back(v);
  }
  return out;
}

std::optional<std::vector<Rational>> additive_sat(const Formula& f) {
  auto letters = free_letters(f);
  const std::size_t d = std::size_t{1} << letters.size();
  auto atoms = atoms_of(f);
  for (const auto& v : skeleton_models(f)) {
    // Negated equalities split into two strict directions.
    std::vector<std::vector<Row>> branches(1);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      if (a.kind != Atom::Kind::Cmp) throw std::invalid_argument("oracle handles comparisons only");
      std::vector<Rational> diff(d, 0);
      term_row(a.lhs(), letters, 1, diff);
      term_row(a.rhs(), letters, -1, diff);
      std::vector<Rational> neg(diff);
      for (auto& x : neg) x = -x;
      if (v[i]) {
        R r = a.rel == Rel::Geq ? R::Ge : a.rel == Rel::Gt ? R::Gt : R::Eq;
        for (auto& b : branches) b.push_back({diff, r});
      } else if (a.rel == Rel::Geq) {
        for (auto& b : branches) b.push_back({neg, R::Gt});
      } else if (a.rel == Rel::Gt) {
        for (auto& b : branches) b.push_back({neg, R::Ge});
      } else {
        std::vector<std::vector<Row>> next;
        for (auto b : branches) {
          auto c = b;
          b.push_back({diff, R::Gt});
          c.push_back({neg, R::Gt});
          next.push_back(b);
          next.push_back(c);
        }
        branches = next;
      }
    }
    for (const auto& rows : branches) {
      bool strict = false;
      for (const auto& r : rows) strict |= r.rel == R::Gt;
      auto y = best_vertex(rows, d, strict);
      if (!y) continue;
      if (strict && (*y)[d] <= 0) continue;
      return std::vector<Rational>(y->begin(), y->begin() + static_cast<long>(d));
    }
  }
  return std::nullopt;
}

bool balanced_and_directed(const BalancedCertificate& c, const CompOrder& o) {
  if (c.kind != BalancedCertificate::Kind::Balanced || c.entries.empty()) return false;
  std::vector<Integer> lhs(static_cast<std::size_t>(o.atoms), 0), rhs(static_cast<std::size_t>(o.atoms), 0);
  bool strict = false;
  for (const auto& e : c.entries) {
    if (e.mult <= 0) return false;
    bool held = e.axiom ? true : (e.strict ? o.gt(e.a, e.b) : o.geq(e.a, e.b));
    if (!held) return false;
    strict |= e.strict;
    for (int i = 0; i < o.atoms; ++i) {
      if ((e.a >> i) & 1u) lhs[i] += e.mult;
      if ((e.b >> i) & 1u) rhs[i] += e.mult;
    }
  }
  return strict && lhs == rhs;
}

bool measure_matches(const CompOrder& o, const std::vector<Rational>& measure) {
  const Subset n = Subset{1} << o.atoms;
  std::vector<Rational> p(n, 0);
  for (Subset s = 0; s < n; ++s)
    for (int i = 0; i < o.atoms; ++i)
      if ((s >> i) & 1u) p[s] += measure[static_cast<std::size_t>(i)];
  for (Subset a = 0; a < n; ++a)
    for (Subset b = 0; b < n; ++b)
      if (o.geq(a, b) != (p[a] >= p[b])) return false;
  return true;
}

}  // namespace oracle
