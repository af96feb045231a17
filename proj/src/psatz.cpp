#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "probcalc/polysolve.hpp"
#include "probcalc/simplex.hpp"

namespace probcalc {

namespace {

Poly product_of(const std::vector<Poly>& ps, const std::vector<std::size_t>& idx) {
  Poly r(1);
  for (std::size_t i : idx) r = r * ps.at(i);
  return r;
}

Poly product_all(const std::vector<Poly>& ps) {
  Poly r(1);
  for (const auto& p : ps) r = r * p;
  return r;
}

// Monomials over `vars` of total degree at most d.
std::vector<Monomial> monomials_upto(const std::vector<Var>& vars, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == vars.size()) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      if (e) cur.emplace_back(vars[i], e);
      rec(i + 1, left - e);
      if (e) cur.pop_back();
    }
  };
  rec(0, d);
  return out;
}

void multisets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    out.push_back(cur);
    if (cur.size() == k) return;
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

bool psatz_verify(const PsatzCertificate& c, const std::vector<Poly>& F, const std::vector<Poly>& G,
                  const std::vector<Poly>& H) {
  if (c.d <= 0) throw std::invalid_argument("certificate scale must be positive");
  Poly sum;
  for (const auto& t : c.cone) {
    for (std::size_t i : t.g)
      if (i >= G.size()) throw std::invalid_argument("cone term references a missing G member");
    if (t.coeff < 0) return false;
    sum += product_of(G, t.g) * (t.square * t.square) * t.coeff;
  }
  for (const auto& t : c.ideal) {
    if (t.h >= H.size()) throw std::invalid_argument("ideal term references a missing H member");
    sum += t.multiplier * H[t.h];
  }
  sum += product_all(F).pow(2 * c.n) * Rational(c.d);
  return sum.is_zero();
}

std::optional<PsatzCertificate> psatz_search(const std::vector<Poly>& F, const std::vector<Poly>& G,
                                             const std::vector<Poly>& H, int d_max) {
  if (d_max < 0) return std::nullopt;
  std::set<Var> vs;
  for (const auto* list : {&F, &G, &H})
    for (const auto& p : *list) {
      auto v = p.vars();
      vs.insert(v.begin(), v.end());
    }
  std::vector<Var> vars(vs.begin(), vs.end());
  Poly f = product_all(F);
  std::vector<std::vector<std::size_t>> sets;
  multisets(G.size(), static_cast<std::size_t>(d_max), sets);
  std::vector<Poly> gprod;
  for (const auto& m : sets) gprod.push_back(product_of(G, m));
  for (unsigned n = 0; n <= 2; ++n) {
    if (n > 0 && F.empty()) break;
    Poly target = f.pow(2 * n);
    unsigned bound = std::max(target.degree(), static_cast<unsigned>(d_max));
    // Columns: cone (set, square monomial) with coefficient >= 0, then ideal (H member, monomial) free.
    struct Col {
      bool cone;
      std::size_t which;
      Monomial mono;
      Poly poly;
    };
    std::vector<Col> cols;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      unsigned dg = gprod[s].degree();
      if (dg > bound) continue;
      for (const auto& mu : monomials_upto(vars, (bound - dg) / 2)) {
        Monomial sq = mono_mul(mu, mu);
        cols.push_back({true, s, mu, gprod[s] * Poly::monomial(sq)});
      }
    }
    for (std::size_t j = 0; j < H.size(); ++j) {
      unsigned dh = H[j].degree();
      if (dh > bound) continue;
      for (const auto& nu : monomials_upto(vars, std::min<unsigned>(bound - dh, static_cast<unsigned>(d_max))))
        cols.push_back({false, j, nu, Poly::monomial(nu) * H[j]});
    }
    std::map<Monomial, std::size_t> rowid;
    for (const auto& c : cols)
      for (const auto& [m, v] : c.poly.terms()) rowid.emplace(m, 0);
    for (const auto& [m, v] : target.terms()) rowid.emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, id] : rowid) id = r++;
    LpProblem lp;
    lp.nvars = cols.size();
    lp.free_var.assign(cols.size(), false);
    lp.rows.assign(rowid.size(), LinRow{{}, RowRel::Eq, 0});
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (!cols[k].cone) lp.free_var[k] = true;
      for (const auto& [m, v] : cols[k].poly.terms()) lp.rows[rowid.at(m)].coeffs[static_cast<Var>(k)] = v;
    }
    for (const auto& [m, v] : target.terms()) lp.rows[rowid.at(m)].rhs = -v;
    LpResult res = lp_solve(lp);
    if (res.status == LpResult::Status::Infeasible) continue;
    PsatzCertificate cert;
    cert.n = n;
    std::vector<Rational> vals;
    std::map<std::size_t, Poly> mult;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (res.x[k] == 0) continue;
      vals.push_back(res.x[k]);
      if (cols[k].cone) cert.cone.push_back({res.x[k], sets[cols[k].which], Poly::monomial(cols[k].mono)});
      else mult[cols[k].which] += Poly::monomial(cols[k].mono, res.x[k]);
    }
    for (auto& [j, p] : mult) {
      for (const auto& [m, v] : p.terms()) vals.push_back(v);
      cert.ideal.push_back({p, j});
    }
    Integer L = lcm_of_denominators(vals);
    for (auto& t : cert.cone) t.coeff *= L;
    for (auto& t : cert.ideal) t.multiplier *= Rational(L);
    cert.d = L;
    if (!psatz_verify(cert, F, G, H)) throw std::logic_error("fitted certificate failed verification");
    return cert;
  }
  return std::nullopt;
}

std::string psatz_to_text(const PsatzCertificate& c, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "psatz n " << c.n << " d " << c.d.get_str() << '\n';
  for (const auto& t : c.cone) {
    os << "cone " << to_string(t.coeff) << " g";
    for (std::size_t i : t.g) os << ' ' << i;
    os << " square " << t.square.to_string(names) << '\n';
  }
  for (const auto& t : c.ideal) os << "ideal h " << t.h << " multiplier " << t.multiplier.to_string(names) << '\n';
  return os.str();
}

PsatzInput psatz_input(const PolySystem& s) {
  PsatzInput in;
  for (const auto& r : s.rows) {
    switch (r.rel) {
      case RowRel::Eq: in.H.push_back(r.p); break;
      case RowRel::Geq: in.G.push_back(r.p); break;
      case RowRel::Gt:
        in.G.push_back(r.p);
        in.F.push_back(r.p);
        break;
      case RowRel::Neq: in.F.push_back(r.p); break;
    }
  }
  if (s.simplex) {
    Poly sum(-1);
    for (Var v = 0; v < s.nvars(); ++v) {
      in.G.push_back(Poly::var(v));
      sum += Poly::var(v);
    }
    in.H.push_back(sum);
  } else {
    for (Var v = 0; v < s.box.size(); ++v) {
      in.G.push_back(Poly::var(v) - Poly(s.box[v].first));
      in.G.push_back(Poly(s.box[v].second) - Poly::var(v));
    }
  }
  return in;
}

}  // namespace probcalc
