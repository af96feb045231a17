#include <algorithm>
#include <set>
#include <stdexcept>

#include "probcalc/linsolve.hpp"
#include "probcalc/polysolve.hpp"

namespace probcalc {

namespace {

std::size_t position(const std::vector<std::string>& letters, const std::string& l) {
  return static_cast<std::size_t>(std::find(letters.begin(), letters.end(), l) - letters.begin());
}

// Index over `sub` of the state s over `letters`.
StateIndex restrict_state(StateIndex s, const std::vector<std::string>& letters, const std::vector<std::string>& sub) {
  StateIndex out = 0;
  for (std::size_t j = 0; j < sub.size(); ++j)
    if (!letter_true(s, position(letters, sub[j]))) out |= StateIndex{1} << j;
  return out;
}

bool mentions(const LocalRow& r, const std::string& l) {
  return std::find(r.letters.begin(), r.letters.end(), l) != r.letters.end();
}

// The same constraint over a superset of its letters.
std::map<StateIndex, Rational> lift_coeffs(const LocalRow& r, const std::vector<std::string>& to) {
  std::map<StateIndex, Rational> out;
  StateIndex n = StateIndex{1} << to.size();
  for (StateIndex s = 0; s < n; ++s) {
    auto it = r.coeffs.find(restrict_state(s, to, r.letters));
    if (it != r.coeffs.end() && it->second != 0) out[s] = it->second;
  }
  return out;
}

std::optional<LocalRow> local_row(const Literal& l) {
  if (l.atom.kind == Atom::Kind::Indep) return std::nullopt;
  auto letters = free_letters(l.atom);
  PolyRow pr = literal_row(l, letters);
  if (pr.rel == RowRel::Neq || pr.p.degree() > 1) return std::nullopt;
  LocalRow r;
  r.letters = letters;
  r.rel = pr.rel;
  StateIndex n = StateIndex{1} << letters.size();
  for (const auto& [m, c] : pr.p.terms()) {
    if (m.empty()) {
      for (StateIndex s = 0; s < n; ++s) r.coeffs[s] += c;
    } else {
      r.coeffs[m[0].first] += c;
    }
  }
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();)
    it = it->second == 0 ? r.coeffs.erase(it) : std::next(it);
  return r;
}

bool trivially_true(const LocalRow& r) {
  if (r.coeffs.empty()) return r.rel != RowRel::Gt;
  // c * P(state) >= 0 with c > 0 holds in every model.
  if (r.rel != RowRel::Geq) return false;
  return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const auto& kv) { return kv.second > 0; });
}

// Projects the rows over context+letter onto the context. nullopt if FM blows up.
std::optional<std::vector<LocalRow>> project_out(const std::vector<LocalRow>& rows, const std::vector<std::string>& ctx,
                                                 const std::string& letter, bool& contradiction) {
  std::vector<std::string> joint = ctx;
  joint.push_back(letter);
  std::size_t nz = std::size_t{1} << joint.size(), ny = std::size_t{1} << ctx.size();
  LinSystem s;
  s.simplex = false;
  s.var_names.resize(nz + ny);
  for (const auto& r : rows) {
    LinRow lr;
    lr.rel = r.rel;
    for (const auto& [st, c] : lift_coeffs(r, joint)) lr.coeffs[static_cast<Var>(st)] = c;
    s.rows.push_back(std::move(lr));
  }
  for (std::size_t z = 0; z < nz; ++z) s.rows.push_back(LinRow{{{static_cast<Var>(z), Rational(1)}}, RowRel::Geq, 0});
  for (std::size_t y = 0; y < ny; ++y)
    s.rows.push_back(LinRow{{{static_cast<Var>(nz + y), Rational(1)},
                             {static_cast<Var>(y), Rational(-1)},
                             {static_cast<Var>(y + ny), Rational(-1)}},
                            RowRel::Eq,
                            0});
  std::vector<Var> zs;
  for (std::size_t z = 0; z < nz; ++z) zs.push_back(static_cast<Var>(z));
  auto proj = fm_project(s, zs, 4000);
  if (!proj) return std::nullopt;
  std::vector<LocalRow> out;
  for (const auto& lr : proj->rows) {
    if (lr.coeffs.empty()) {
      bool ok = lr.rel == RowRel::Eq ? lr.rhs == 0 : lr.rel == RowRel::Geq ? 0 >= lr.rhs : 0 > lr.rhs;
      if (!ok) contradiction = true;
      continue;
    }
    LocalRow r;
    r.letters = ctx;
    r.rel = lr.rel;
    for (const auto& [v, c] : lr.coeffs) r.coeffs[v - nz] = c;
    if (lr.rhs != 0) throw std::logic_error("projection produced an inhomogeneous row");
    if (!trivially_true(r)) out.push_back(std::move(r));
  }
  return out;
}

Model reorder(const Model& m, const std::vector<std::string>& target) {
  Model out;
  out.letters = target;
  out.mode = m.mode;
  for (const auto& [s, w] : m.weights) {
    if (w == 0) continue;
    out.weights[restrict_state(s, m.letters, target)] += w;
  }
  return out;
}

}  // namespace

Presolved presolve(const Conjunct& c, const std::vector<std::string>& letters, std::size_t max_joint) {
  Presolved p;
  std::set<std::string> pinned;
  std::vector<LocalRow> rows;
  for (const auto& l : c) {
    auto r = local_row(l);
    if (r) {
      if (r->coeffs.empty()) {
        bool ok = r->rel != RowRel::Gt;
        if (!ok) p.contradiction = true;
        continue;
      }
      rows.push_back(std::move(*r));
    } else {
      p.residual.push_back(l);
      for (const auto& name : free_letters(l.atom)) pinned.insert(name);
    }
  }
  std::set<std::string> blocked;
  while (!p.contradiction) {
    std::optional<std::string> best;
    std::vector<std::string> best_ctx;
    for (const auto& l : letters) {
      if (pinned.count(l) || blocked.count(l)) continue;
      std::set<std::string> ctx;
      bool used = false;
      for (const auto& r : rows)
        if (mentions(r, l)) {
          used = true;
          for (const auto& o : r.letters)
            if (o != l) ctx.insert(o);
        }
      if (!used || ctx.size() + 1 > max_joint) continue;
      if (!best || ctx.size() < best_ctx.size()) {
        best = l;
        best_ctx.assign(ctx.begin(), ctx.end());
      }
    }
    if (!best) break;
    std::vector<LocalRow> touched, rest;
    for (auto& r : rows) (mentions(r, *best) ? touched : rest).push_back(std::move(r));
    bool contra = false;
    auto proj = project_out(touched, best_ctx, *best, contra);
    if (!proj) {
      blocked.insert(*best);
      for (auto& r : touched) rest.push_back(std::move(r));
      rows = std::move(rest);
      continue;
    }
    Presolved::Gadget g;
    g.letter = *best;
    g.context = best_ctx;
    std::vector<std::string> joint = best_ctx;
    joint.push_back(*best);
    for (const auto& r : touched) {
      LocalRow lifted;
      lifted.letters = joint;
      lifted.rel = r.rel;
      lifted.coeffs = lift_coeffs(r, joint);
      g.rows.push_back(std::move(lifted));
    }
    p.gadgets.push_back(std::move(g));
    for (auto& r : *proj) rest.push_back(std::move(r));
    rows = std::move(rest);
    if (contra) p.contradiction = true;
  }
  std::set<std::string> kept = pinned;
  for (const auto& r : rows) kept.insert(r.letters.begin(), r.letters.end());
  p.kept.assign(kept.begin(), kept.end());
  p.local = std::move(rows);
  return p;
}

PolySystem residual_system(const Presolved& p) {
  PolySystem s;
  s.var_names = state_descriptions(p.kept);
  s.simplex = true;
  for (const auto& l : p.residual) s.rows.push_back(literal_row(l, p.kept));
  for (const auto& r : p.local) {
    Poly q;
    for (const auto& [st, c] : lift_coeffs(r, p.kept)) q += Poly::var(static_cast<Var>(st)) * c;
    s.rows.push_back({q, r.rel});
  }
  return s;
}

std::optional<Model> extend_model(const Presolved& p, const Model& m, const std::vector<std::string>& letters) {
  Model cur = reorder(m, p.kept);
  for (auto it = p.gadgets.rbegin(); it != p.gadgets.rend(); ++it) {
    const auto& g = *it;
    std::vector<std::string> joint = g.context;
    joint.push_back(g.letter);
    std::size_t nz = std::size_t{1} << joint.size(), ny = std::size_t{1} << g.context.size();
    std::vector<Rational> y(ny, 0);
    for (const auto& [s, w] : cur.weights) y[restrict_state(s, cur.letters, g.context)] += w;
    LinSystem sys;
    sys.simplex = false;
    sys.var_names.resize(nz);
    for (const auto& r : g.rows) {
      LinRow lr;
      lr.rel = r.rel;
      for (const auto& [st, c] : r.coeffs) lr.coeffs[static_cast<Var>(st)] = c;
      sys.rows.push_back(std::move(lr));
    }
    for (std::size_t z = 0; z < nz; ++z) sys.rows.push_back(LinRow{{{static_cast<Var>(z), Rational(1)}}, RowRel::Geq, 0});
    for (std::size_t i = 0; i < ny; ++i)
      sys.rows.push_back(
          LinRow{{{static_cast<Var>(i), Rational(1)}, {static_cast<Var>(i + ny), Rational(1)}}, RowRel::Eq, y[i]});
    LinResult r = lin_sat(sys);
    if (!r.sat) return std::nullopt;
    Model next;
    next.letters = cur.letters;
    next.letters.push_back(g.letter);
    next.mode = cur.mode;
    StateIndex off = StateIndex{1} << cur.letters.size();
    for (const auto& [s, w] : cur.weights) {
      if (w == 0) continue;
      StateIndex i = restrict_state(s, cur.letters, g.context);
      const Rational &zt = r.witness[i], &zf = r.witness[i + ny];
      Rational tot = zt + zf;
      if (zt != 0) next.weights[s] += w * zt / tot;
      if (zf != 0) next.weights[s + off] += w * zf / tot;
    }
    cur = std::move(next);
  }
  return reorder(cur, letters);
}

}  // namespace probcalc
