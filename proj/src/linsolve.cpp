#include "probcalc/linsolve.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "probcalc/reductions.hpp"

namespace probcalc {

namespace {

struct Row {
  std::map<Var, Rational> a;
  RowRel rel = RowRel::Geq;
  Rational b = 0;
  std::map<std::size_t, Rational> prov;
};

void axpy(std::map<Var, Rational>& y, const Rational& k, const std::map<Var, Rational>& x) {
  for (const auto& [v, c] : x) {
    auto [it, ins] = y.emplace(v, k * c);
    if (!ins) {
      it->second += k * c;
      if (it->second == 0) y.erase(it);
    } else if (it->second == 0) {
      y.erase(it);
    }
  }
}

void axpy(std::map<std::size_t, Rational>& y, const Rational& k, const std::map<std::size_t, Rational>& x) {
  for (const auto& [v, c] : x) {
    auto [it, ins] = y.emplace(v, k * c);
    if (!ins) {
      it->second += k * c;
      if (it->second == 0) y.erase(it);
    } else if (it->second == 0) {
      y.erase(it);
    }
  }
}

void scale(Row& r, const Rational& k) {
  for (auto& [v, c] : r.a) c *= k;
  r.b *= k;
  for (auto& [i, c] : r.prov) c *= k;
}

void normalize_row(Row& r) {
  if (r.a.empty()) return;
  Rational lead = r.a.begin()->second;
  if (r.rel == RowRel::Eq) scale(r, 1 / lead);
  else scale(r, 1 / abs(lead));
}

bool ground_holds(const Row& r) {
  switch (r.rel) {
    case RowRel::Eq: return r.b == 0;
    case RowRel::Geq: return 0 >= r.b;
    case RowRel::Gt: return 0 > r.b;
    case RowRel::Neq: return r.b != 0;
  }
  return false;
}

// Keeps the strongest of parallel inequalities and one copy of repeated equalities.
void dedup(std::vector<Row>& rows) {
  std::map<std::pair<bool, std::map<Var, Rational>>, std::size_t> seen;
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    bool eq = r.rel == RowRel::Eq;
    auto key = std::make_pair(eq, r.a);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(r));
      continue;
    }
    Row& kept = out[it->second];
    if (eq) {
      if (kept.b != r.b) out.push_back(std::move(r));
      continue;
    }
    bool stronger = r.b > kept.b || (r.b == kept.b && r.rel == RowRel::Gt && kept.rel == RowRel::Geq);
    if (stronger) kept = std::move(r);
  }
  rows = std::move(out);
}

struct BackStep {
  Var v;
  bool subst = false;
  Row eq;
  std::vector<Row> lower, upper;
};

struct Bound {
  Rational value;
  bool strict;
};

Rational rest_value(const Row& r, Var v, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [u, c] : r.a)
    if (u != v) s += c * x[u];
  return s;
}

Rational choose_value(const BackStep& st, const std::vector<Rational>& x) {
  if (st.subst) {
    const Rational& av = st.eq.a.at(st.v);
    return (st.eq.b - rest_value(st.eq, st.v, x)) / av;
  }
  std::optional<Bound> lo, hi;
  for (const auto& r : st.lower) {
    Rational val = (r.b - rest_value(r, st.v, x)) / r.a.at(st.v);
    bool strict = r.rel == RowRel::Gt;
    if (!lo || val > lo->value || (val == lo->value && strict)) lo = Bound{val, strict};
  }
  for (const auto& r : st.upper) {
    Rational val = (r.b - rest_value(r, st.v, x)) / r.a.at(st.v);
    bool strict = r.rel == RowRel::Gt;
    if (!hi || val < hi->value || (val == hi->value && strict)) hi = Bound{val, strict};
  }
  if (!lo && !hi) return 0;
  if (lo && !hi) return lo->strict ? lo->value + 1 : lo->value;
  if (!lo && hi) return hi->strict ? hi->value - 1 : hi->value;
  if (!lo->strict) return lo->value;
  if (!hi->strict) return hi->value;
  return (lo->value + hi->value) / 2;
}

class Eliminator {
 public:
  Eliminator(const LinSystem& s, bool prov) : nvars_(s.nvars()) {
    LinSystem m = materialize_simplex(s);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      const LinRow& lr = m.rows[i];
      Row r;
      for (const auto& [v, c] : lr.coeffs)
        if (c != 0) r.a[v] = c;
      r.rel = lr.rel;
      r.b = lr.rhs;
      if (r.rel == RowRel::Neq) throw std::invalid_argument("linear systems take no != rows");
      if (prov) r.prov[i] = 1;
      normalize_row(r);
      rows_.push_back(std::move(r));
    }
    dedup(rows_);
  }

  // False when a ground row fails; the failing row is left in `bad_`.
  bool check_ground() {
    std::vector<Row> keep;
    for (auto& r : rows_) {
      if (!r.a.empty()) {
        keep.push_back(std::move(r));
        continue;
      }
      if (!ground_holds(r)) {
        bad_ = r;
        return false;
      }
    }
    rows_ = std::move(keep);
    return true;
  }

  std::optional<Var> pick(const std::vector<bool>* only = nullptr) const {
    std::map<Var, std::size_t> occ;
    for (const auto& r : rows_)
      for (const auto& [v, c] : r.a)
        if (!only || (*only)[v]) ++occ[v];
    std::optional<Var> best;
    std::size_t best_n = 0;
    for (const auto& [v, n] : occ)
      if (!best || n < best_n) {
        best = v;
        best_n = n;
      }
    return best;
  }

  ElimStep eliminate(Var v) {
    ElimStep step;
    step.var = v;
    step.rows_before = rows_.size();
    BackStep back;
    back.v = v;
    const Row* eq = nullptr;
    for (const auto& r : rows_)
      if (r.rel == RowRel::Eq && r.a.count(v) && (!eq || r.a.size() < eq->a.size())) eq = &r;
    std::vector<Row> next;
    if (eq) {
      step.kind = ElimStep::Kind::Substitute;
      back.subst = true;
      back.eq = *eq;
      Rational av = eq->a.at(v);
      for (auto& r : rows_) {
        if (&r == eq) continue;
        auto it = r.a.find(v);
        if (it != r.a.end()) {
          Rational k = -it->second / av;
          axpy(r.a, k, back.eq.a);
          r.b += k * back.eq.b;
          axpy(r.prov, k, back.eq.prov);
          r.a.erase(v);
          normalize_row(r);
        }
        next.push_back(std::move(r));
      }
    } else {
      std::vector<Row> lower, upper;
      for (auto& r : rows_) {
        auto it = r.a.find(v);
        if (it == r.a.end()) next.push_back(std::move(r));
        else if (it->second > 0) lower.push_back(std::move(r));
        else upper.push_back(std::move(r));
      }
      step.kind = (lower.empty() || upper.empty()) ? ElimStep::Kind::Free : ElimStep::Kind::Combine;
      for (const auto& l : lower)
        for (const auto& u : upper) {
          Rational kl = 1 / l.a.at(v), ku = -1 / u.a.at(v);
          Row r;
          axpy(r.a, kl, l.a);
          axpy(r.a, ku, u.a);
          r.a.erase(v);
          r.b = kl * l.b + ku * u.b;
          r.rel = (l.rel == RowRel::Gt || u.rel == RowRel::Gt) ? RowRel::Gt : RowRel::Geq;
          axpy(r.prov, kl, l.prov);
          axpy(r.prov, ku, u.prov);
          normalize_row(r);
          next.push_back(std::move(r));
        }
      back.lower = std::move(lower);
      back.upper = std::move(upper);
    }
    rows_ = std::move(next);
    dedup(rows_);
    steps_.push_back(std::move(back));
    step.rows_after = rows_.size();
    return step;
  }

  std::vector<Rational> back_substitute() const {
    std::vector<Rational> x(nvars_);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) x[it->v] = choose_value(*it, x);
    return x;
  }

  std::vector<Row>& rows() { return rows_; }
  const Row& bad() const { return bad_; }

 private:
  std::size_t nvars_;
  std::vector<Row> rows_;
  std::vector<BackStep> steps_;
  Row bad_;
};

LinRow to_lin_row(const Row& r) {
  LinRow out;
  out.coeffs = r.a;
  out.rel = r.rel;
  out.rhs = r.b;
  return out;
}

}  // namespace

LinSystem fm_eliminate(const LinSystem& s, Var v) {
  Eliminator e(s, false);
  e.eliminate(v);
  LinSystem out;
  out.var_names = s.var_names;
  out.simplex = false;
  for (const auto& r : e.rows()) out.rows.push_back(to_lin_row(r));
  return out;
}

std::optional<LinSystem> fm_project(const LinSystem& s, const std::vector<Var>& vars, std::size_t max_rows) {
  Eliminator e(s, false);
  std::vector<bool> only(s.nvars(), false);
  for (Var v : vars) only.at(v) = true;
  LinSystem out;
  out.var_names = s.var_names;
  out.simplex = false;
  while (true) {
    if (!e.check_ground()) {
      out.rows = {to_lin_row(e.bad())};
      return out;
    }
    auto v = e.pick(&only);
    if (!v) break;
    e.eliminate(*v);
    if (e.rows().size() > max_rows) return std::nullopt;
  }
  for (const auto& r : e.rows()) out.rows.push_back(to_lin_row(r));
  return out;
}

LinResult lin_sat(const LinSystem& s, bool track_provenance) {
  LinResult res;
  Eliminator e(s, track_provenance);
  while (true) {
    if (!e.check_ground()) {
      res.sat = false;
      res.contradiction = to_lin_row(e.bad());
      res.multipliers = e.bad().prov;
      return res;
    }
    auto v = e.pick();
    if (!v) break;
    res.trace.push_back(e.eliminate(*v));
  }
  res.sat = true;
  res.witness = e.back_substitute();
  if (!system_holds(materialize_simplex(s), res.witness))
    throw std::logic_error("Fourier-Motzkin witness failed exact verification");
  return res;
}

std::string trace_to_text(const LinResult& r, const std::vector<std::string>& var_names) {
  std::ostringstream os;
  for (const auto& st : r.trace) {
    const char* kind = st.kind == ElimStep::Kind::Substitute ? "substitute"
                       : st.kind == ElimStep::Kind::Combine  ? "combine"
                                                             : "drop";
    os << "eliminate x[" << var_names.at(st.var) << "] " << kind << " rows " << st.rows_before << " -> "
       << st.rows_after << '\n';
  }
  if (!r.sat) os << "contradiction: 0 " << rel_symbol(r.contradiction.rel) << ' ' << r.contradiction.rhs.get_str() << '\n';
  return os.str();
}

namespace {

Formula additive_view(const Formula& f) {
  if (generable(f, Lang::Add)) return f;
  if (generable(f, Lang::SameCond)) return same_cond_to_comp(f);
  throw WrongFragment("formula is outside the additive and same_cond languages");
}

}  // namespace

AdditiveResult sat_additive(const Formula& f) {
  Formula g = additive_view(f);
  auto letters = free_letters(g);
  AdditiveResult out;
  auto disjuncts = dnf(g);
  for (std::size_t i = 0; i < disjuncts.size(); ++i) {
    Expansion e = expand(disjuncts[i], letters);
    if (!e.linear) throw std::logic_error("additive disjunct expanded to a nonlinear system");
    LinResult r = lin_sat(e.lin);
    if (r.sat) {
      out.sat = true;
      out.model = model_from_vector(letters, r.witness);
      out.disjunct = i;
      out.disjunct_atoms = disjuncts[i].size();
      if (!satisfies(out.model, f)) throw std::logic_error("additive witness does not satisfy the formula");
      return out;
    }
    out.refutations.push_back(std::move(r));
  }
  return out;
}

Model minimize_support(const Formula& f, const Model& witness) {
  Formula g = additive_view(f);
  const auto& letters = witness.letters;
  auto disjuncts = dnf(g);
  for (const auto& c : disjuncts) {
    if (!satisfies(witness, conjunct_formula(c))) continue;
    Expansion e = expand(c, letters);
    if (!e.linear) break;
    std::vector<Rational> w = dense_weights(witness.normalized());
    std::vector<Var> order;
    LinSystem sys = e.lin;
    for (Var v = 0; v < w.size(); ++v) {
      if (w[v] == 0) sys.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Eq, 0});
      else order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(), [&](Var a, Var b) { return w[a] < w[b]; });
    std::vector<Rational> best = w;
    for (Var v : order) {
      LinSystem trial = sys;
      trial.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Eq, 0});
      LinResult r = lin_sat(trial);
      if (r.sat) {
        sys = std::move(trial);
        best = r.witness;
      }
    }
    Model m = model_from_vector(letters, best);
    if (!satisfies(m, f)) throw std::logic_error("minimized witness does not satisfy the formula");
    return m;
  }
  return witness;
}

}  // namespace probcalc
