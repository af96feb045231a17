#include "probcalc/represent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "probcalc/simplex.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

std::string subset_to_text(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; s >> i; ++i)
    if (s >> i & 1) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

Subset parse_subset(const std::string& text, int atoms) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '{') throw ParseError("expected '{'", i);
  ++i;
  Subset s = 0;
  skip();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    while (true) {
      skip();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected an atom index", i);
      int a = std::stoi(text.substr(start, i - start));
      if (a >= atoms) throw ParseError("atom " + std::to_string(a) + " out of range", start);
      s |= Subset{1} << a;
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw ParseError("expected ',' or '}'", i);
    }
  }
  skip();
  if (i != text.size()) throw ParseError("trailing text after subset", i);
  return s;
}

const char* cmp_rel_text(CmpRel r) {
  switch (r) {
    case CmpRel::Geq: return ">=";
    case CmpRel::Gt: return ">";
    case CmpRel::Eq: return "=";
  }
  return "?";
}

CmpRel parse_cmp_rel(const std::string& s) {
  if (s == ">=") return CmpRel::Geq;
  if (s == ">") return CmpRel::Gt;
  if (s == "=" || s == "~") return CmpRel::Eq;
  throw ParseError("unknown comparison '" + s + "'", 0);
}

// ---- Preorder ----

Preorder::Preorder(std::size_t n) : n_(n), val_(n * n, 0) {}

void Preorder::relate(std::size_t i, std::size_t j, CmpRel r) {
  auto& v = val_[i * n_ + j];
  switch (r) {
    case CmpRel::Geq: v = std::max<std::uint8_t>(v, 1); break;
    case CmpRel::Gt: v = 2; break;
    case CmpRel::Eq:
      v = std::max<std::uint8_t>(v, 1);
      val_[j * n_ + i] = std::max<std::uint8_t>(val_[j * n_ + i], 1);
      break;
  }
}

void Preorder::set_geq(std::size_t i, std::size_t j, bool v) {
  val_[i * n_ + j] = v ? 1 : 0;
  auto& ij = val_[i * n_ + j];
  auto& ji = val_[j * n_ + i];
  if (ij && !ji) ij = 2;
  if (ji && !ij) ji = 2;
  if (ij && ji) ij = ji = 1;
}

void Preorder::close() {
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint8_t ik = at(i, k);
      if (!ik) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint8_t kj = at(k, j);
        if (!kj) continue;
        auto& ij = val_[i * n_ + j];
        ij = std::max(ij, std::max(ik, kj));
      }
    }
  if (!total()) return;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) && !at(j, i)) val_[i * n_ + j] = 2;
}

bool Preorder::total() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (!at(i, j) && !at(j, i)) return false;
  return true;
}

bool Preorder::transitive() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      if (!at(i, k)) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (at(k, j) && !at(i, j)) return false;
    }
  return true;
}

bool Preorder::consistent() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (at(i, j) == 2 && at(j, i)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> Preorder::classes() const {
  std::vector<std::size_t> score(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) score[i] += at(i, j) ? 1 : 0;
  std::vector<std::size_t> idx(n_);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || score[idx[k]] != score[idx[k - 1]]) out.emplace_back();
    out.back().push_back(idx[k]);
  }
  return out;
}

// ---- CompOrder ----

namespace {

Rational mass(const std::vector<Rational>& w, Subset s) {
  Rational r = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (s >> i & 1) r += w[i];
  return r;
}

Subset omega(int atoms) { return (Subset{1} << atoms) - 1; }

std::string pair_text(Subset a, Subset b, const char* rel) {
  return subset_to_text(a) + " " + rel + " " + subset_to_text(b);
}

}  // namespace

CompOrder CompOrder::from_measure(const std::vector<Rational>& weights) {
  CompOrder o;
  o.atoms = static_cast<int>(weights.size());
  std::vector<Rational> v(std::size_t{1} << o.atoms);
  for (Subset s = 0; s < v.size(); ++s) v[s] = mass(weights, s);
  o.rel = Preorder::from_values(v);
  return o;
}

CompOrder CompOrder::from_comparisons(int atoms, const std::vector<Comparison>& cs) {
  if (atoms < 0 || atoms > 10) throw std::invalid_argument("atom count must be between 0 and 10");
  CompOrder o;
  o.atoms = atoms;
  o.rel = Preorder(std::size_t{1} << atoms);
  for (std::size_t i = 0; i < o.rel.size(); ++i) o.rel.relate(i, i, CmpRel::Eq);
  for (const auto& c : cs) {
    if (c.a > omega(atoms) || c.b > omega(atoms)) throw std::invalid_argument("comparison mentions a missing atom");
    o.rel.relate(c.a, c.b, c.rel);
  }
  o.rel.close();
  return o;
}

std::vector<Comparison> CompOrder::comparisons() const {
  std::vector<Comparison> out;
  if (rel.total() && rel.transitive()) {
    auto cls = rel.classes();
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (std::size_t m = 1; m < cls[k].size(); ++m)
        out.push_back({static_cast<Subset>(cls[k][m]), static_cast<Subset>(cls[k][0]), CmpRel::Eq});
      if (k > 0) out.push_back({static_cast<Subset>(cls[k][0]), static_cast<Subset>(cls[k - 1][0]), CmpRel::Gt});
    }
    return out;
  }
  for (Subset a = 0; a < rel.size(); ++a)
    for (Subset b = 0; b < rel.size(); ++b) {
      if (a == b) continue;
      if (gt(a, b)) out.push_back({a, b, CmpRel::Gt});
      else if (geq(a, b) && geq(b, a) && a < b) out.push_back({a, b, CmpRel::Eq});
      else if (geq(a, b) && !geq(b, a)) out.push_back({a, b, CmpRel::Geq});
    }
  return out;
}

bool all_pass(const AxiomReport& r) {
  return std::all_of(r.begin(), r.end(), [](const AxiomCheck& c) { return c.ok; });
}

AxiomReport check_definetti_axioms(const CompOrder& o) {
  AxiomReport rep;
  const std::size_t n = o.rel.size();
  AxiomCheck tot{"Tot", true, ""};
  for (Subset a = 0; a < n && tot.ok; ++a) {
    if (!o.geq(a, a)) {
      tot = {"Tot", false, "not reflexive at " + subset_to_text(a)};
      break;
    }
    for (Subset b = 0; b < n; ++b)
      if (!o.geq(a, b) && !o.geq(b, a)) {
        tot = {"Tot", false, "incomparable " + subset_to_text(a) + " and " + subset_to_text(b)};
        break;
      }
  }
  for (Subset a = 0; a < n && tot.ok; ++a)
    for (Subset b = 0; b < n && tot.ok; ++b) {
      if (!o.geq(a, b)) continue;
      for (Subset c = 0; c < n; ++c)
        if (o.geq(b, c) && !o.geq(a, c)) {
          tot = {"Tot", false,
                 pair_text(a, b, ">=") + ", " + pair_text(b, c, ">=") + " but not " + pair_text(a, c, ">=")};
          break;
        }
    }
  rep.push_back(tot);

  Subset om = omega(o.atoms);
  AxiomCheck nondeg{"NonDeg", !o.geq(0, om), ""};
  if (!nondeg.ok) nondeg.witness = pair_text(0, om, ">=");
  rep.push_back(nondeg);

  AxiomCheck nontriv{"NonTriv", true, ""};
  for (Subset a = 0; a < n; ++a)
    if (!o.geq(a, 0)) {
      nontriv = {"NonTriv", false, "not " + pair_text(a, 0, ">=")};
      break;
    }
  rep.push_back(nontriv);

  AxiomCheck quasi{"Quasi", true, ""};
  for (Subset a = 0; a < n && quasi.ok; ++a)
    for (Subset b = 0; b < n; ++b) {
      Subset x = a & ~b, y = b & ~a;
      if (o.geq(a, b) != o.geq(x, y)) {
        quasi = {"Quasi", false,
                 pair_text(a, b, o.geq(a, b) ? ">=" : "<") + " but " + pair_text(x, y, o.geq(x, y) ? ">=" : "<")};
        break;
      }
    }
  rep.push_back(quasi);
  return rep;
}

AxiomCheck check_fincan(const CompOrder& o, std::size_t n) {
  if (n == 0) throw std::invalid_argument("FinCan needs n >= 1");
  const std::size_t events = o.rel.size();
  const int atoms = o.atoms;
  std::vector<std::pair<Subset, Subset>> held;
  for (Subset a = 0; a < events; ++a)
    for (Subset b = 0; b < events; ++b)
      if (o.geq(a, b)) held.emplace_back(a, b);
  AxiomCheck out{"FinCan:" + std::to_string(n), true, ""};
  std::vector<int> v(static_cast<std::size_t>(atoms), 0);
  std::vector<std::pair<Subset, Subset>> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    const int left = static_cast<int>(n - k);
    for (int i = 0; i < atoms; ++i)
      if (std::abs(v[i]) > left) return true;
    if (k + 1 == n) {
      Subset an = 0, bn = 0, free = 0;
      for (int i = 0; i < atoms; ++i) {
        if (v[i] == -1) an |= Subset{1} << i;
        else if (v[i] == 1) bn |= Subset{1} << i;
        else free |= Subset{1} << i;
      }
      for (Subset c = free;; c = (c - 1) & free) {
        if (!o.geq(bn | c, an | c)) {
          std::string w;
          for (const auto& [a, b] : chosen) w += pair_text(a, b, ">=") + ", ";
          out.ok = false;
          out.witness = w + "balanced but not " + pair_text(bn | c, an | c, ">=");
          return false;
        }
        if (c == 0) break;
      }
      return true;
    }
    for (const auto& [a, b] : held) {
      for (int i = 0; i < atoms; ++i) v[i] += static_cast<int>((a >> i) & 1u) - static_cast<int>((b >> i) & 1u);
      chosen.emplace_back(a, b);
      bool go = rec(k + 1);
      chosen.pop_back();
      for (int i = 0; i < atoms; ++i) v[i] -= static_cast<int>((a >> i) & 1u) - static_cast<int>((b >> i) & 1u);
      if (!go) return false;
    }
    return true;
  };
  rec(0);
  return out;
}

// ---- certificates ----

bool certificate_balanced(const BalancedCertificate& c, int atoms) {
  std::vector<Integer> tally(static_cast<std::size_t>(atoms), 0);
  for (const auto& e : c.entries) {
    if (e.mult <= 0) return false;
    for (int i = 0; i < atoms; ++i) {
      if (e.a >> i & 1) tally[i] += e.mult;
      if (e.b >> i & 1) tally[i] -= e.mult;
    }
  }
  return std::all_of(tally.begin(), tally.end(), [](const Integer& t) { return t == 0; });
}

bool verify_certificate(const BalancedCertificate& c, const CompOrder& o) {
  Subset om = omega(o.atoms);
  for (const auto& e : c.entries)
    if (e.a > om || e.b > om) return false;
  switch (c.kind) {
    case BalancedCertificate::Kind::NonDeg:
      return c.entries.size() == 1 && c.entries[0].a == 0 && c.entries[0].b == om && o.geq(0, om);
    case BalancedCertificate::Kind::NonTriv:
      return c.entries.size() == 1 && c.entries[0].a == 0 && o.gt(0, c.entries[0].b);
    case BalancedCertificate::Kind::Balanced: break;
  }
  if (!certificate_balanced(c, o.atoms)) return false;
  bool strict = false;
  for (const auto& e : c.entries) {
    if (e.axiom) {
      bool atom = e.b == 0 && e.a != 0 && (e.a & (e.a - 1)) == 0 && !e.strict;
      bool whole = e.b == 0 && e.a == om && e.strict;
      if (!atom && !whole) return false;
    } else if (e.strict ? !o.gt(e.a, e.b) : !o.geq(e.a, e.b)) {
      return false;
    }
    strict = strict || e.strict;
  }
  return strict;
}

std::string certificate_to_text(const BalancedCertificate& c) {
  std::ostringstream os;
  switch (c.kind) {
    case BalancedCertificate::Kind::NonDeg: os << "nondeg\n"; break;
    case BalancedCertificate::Kind::NonTriv: os << "nontriv\n"; break;
    case BalancedCertificate::Kind::Balanced: os << "balanced\n"; break;
  }
  for (const auto& e : c.entries) {
    os << e.mult.get_str() << " x " << pair_text(e.a, e.b, e.strict ? ">" : ">=");
    if (e.axiom) os << " (measure axiom)";
    os << '\n';
  }
  return os.str();
}

// ---- representability ----

namespace {

struct OrderRow {
  Subset a, b;
  RowRel rel;
};

LinRow difference_row(Subset a, Subset b, int atoms, RowRel rel) {
  LinRow r;
  r.rel = rel;
  r.rhs = 0;
  for (int i = 0; i < atoms; ++i) {
    int c = (a >> i & 1) - (b >> i & 1);
    if (c) r.coeffs[static_cast<Var>(i)] = c;
  }
  return r;
}

std::vector<OrderRow> order_rows(const CompOrder& o) {
  std::vector<OrderRow> rows;
  if (o.rel.total() && o.rel.transitive()) {
    auto cls = o.rel.classes();
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (std::size_t m = 1; m < cls[k].size(); ++m)
        rows.push_back({static_cast<Subset>(cls[k][0]), static_cast<Subset>(cls[k][m]), RowRel::Eq});
      if (k > 0) rows.push_back({static_cast<Subset>(cls[k][0]), static_cast<Subset>(cls[k - 1][0]), RowRel::Gt});
    }
    return rows;
  }
  for (Subset a = 0; a < o.rel.size(); ++a)
    for (Subset b = 0; b < o.rel.size(); ++b) {
      if (a == b) continue;
      if (o.gt(a, b)) rows.push_back({a, b, RowRel::Gt});
      else if (o.geq(a, b) && o.geq(b, a) && a < b) rows.push_back({a, b, RowRel::Eq});
      else if (o.geq(a, b) && !o.geq(b, a)) rows.push_back({a, b, RowRel::Geq});
    }
  return rows;
}

}  // namespace

RepresentResult representable(const CompOrder& o, bool allow_partial) {
  bool total = o.rel.total();
  if (!total && !allow_partial) throw std::invalid_argument("order is not total");
  RepresentResult res;
  Subset om = omega(o.atoms);
  if (o.geq(0, om)) {
    res.certificate.kind = BalancedCertificate::Kind::NonDeg;
    res.certificate.entries.push_back({0, om, 1, false, false});
    return res;
  }
  for (Subset a = 0; a <= om; ++a)
    if (o.gt(0, a)) {
      res.certificate.kind = BalancedCertificate::Kind::NonTriv;
      res.certificate.entries.push_back({0, a, 1, true, false});
      return res;
    }

  auto rows = order_rows(o);
  LinSystem s;
  s.simplex = true;
  for (int i = 0; i < o.atoms; ++i) s.var_names.push_back("w" + std::to_string(i));
  for (const auto& r : rows) s.rows.push_back(difference_row(r.a, r.b, o.atoms, r.rel));
  LinResult lr = lin_sat(s, true);
  if (lr.sat) {
    res.yes = true;
    res.measure = lr.witness;
    return res;
  }

  // Materialized rows: order rows, then w_i >= 0, then sum w = 1.
  const std::size_t R = rows.size(), A = static_cast<std::size_t>(o.atoms);
  std::map<std::size_t, Rational> mult = lr.multipliers;
  auto nu = mult.find(R + A);
  if (nu != mult.end() && nu->second < 0)
    for (auto& [k, m] : mult) m = -m;
  std::vector<Rational> vals;
  for (const auto& [k, m] : mult)
    if (m != 0) vals.push_back(m);
  Integer L = lcm_of_denominators(vals);
  BalancedCertificate& cert = res.certificate;
  cert.kind = BalancedCertificate::Kind::Balanced;
  for (const auto& [k, m0] : mult) {
    if (m0 == 0) continue;
    Rational m = m0 * L;
    Integer mi = m.get_num();
    BalancedCertificate::Entry e;
    if (k < R) {
      const auto& r = rows[k];
      if (m < 0) {
        if (r.rel != RowRel::Eq) throw std::logic_error("negative multiplier on an inequality");
        e = {r.b, r.a, -mi, false, false};
      } else {
        e = {r.a, r.b, mi, r.rel == RowRel::Gt, false};
      }
    } else if (k < R + A) {
      Subset atom = Subset{1} << (k - R);
      e = {atom, 0, mi, false, !o.geq(atom, 0)};
    } else {
      e = {om, 0, mi, true, !o.gt(om, 0)};
    }
    cert.entries.push_back(e);
  }
  if (!verify_certificate(cert, o)) throw std::logic_error("extracted certificate failed verification");
  return res;
}

bool measure_reproduces(const CompOrder& o, const std::vector<Rational>& measure) {
  if (measure.size() != static_cast<std::size_t>(o.atoms)) return false;
  for (Subset a = 0; a < o.rel.size(); ++a)
    for (Subset b = 0; b < o.rel.size(); ++b)
      if (o.geq(a, b) != (mass(measure, a) >= mass(measure, b))) return false;
  return true;
}

// ---- S_k ----

namespace {

struct SkSearch {
  const CompOrder& o;
  std::size_t k;
  long budget;
  std::vector<std::pair<Subset, Subset>> cols;
  int lps = 0;

  std::optional<std::vector<Rational>> solve(const std::set<std::size_t>& excluded) {
    ++lps;
    LpProblem lp;
    lp.nvars = cols.size();
    lp.rows.assign(static_cast<std::size_t>(o.atoms) + 1, LinRow{{}, RowRel::Eq, 0});
    lp.rows.back().rhs = 1;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (excluded.count(c)) continue;
      for (int i = 0; i < o.atoms; ++i) {
        int d = (cols[c].first >> i & 1) - (cols[c].second >> i & 1);
        if (d) lp.rows[i].coeffs[static_cast<Var>(c)] = d;
      }
      lp.rows.back().coeffs[static_cast<Var>(c)] = 1;
    }
    LpResult r = lp_solve(lp);
    if (r.status == LpResult::Status::Infeasible) return std::nullopt;
    return r.x;
  }

  // Smallest integer multiplicities proportional to x.
  static std::vector<Integer> integral(const std::vector<Rational>& x) {
    std::vector<Rational> nz;
    for (const auto& v : x)
      if (v != 0) nz.push_back(v);
    Integer L = lcm_of_denominators(nz), g = 0;
    std::vector<Integer> out;
    for (const auto& v : x) {
      Rational s = v * L;
      out.push_back(s.get_num());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
      for (auto& v : out) v /= g;
    return out;
  }

  std::optional<BalancedCertificate> run(const std::set<std::size_t>& excluded, int depth) {
    if (lps > 256) return std::nullopt;
    auto x = solve(excluded);
    if (!x) return std::nullopt;
    auto m = integral(*x);
    std::vector<std::size_t> support;
    bool small = true;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (m[c] != 0) {
        support.push_back(c);
        if (m[c] > budget) small = false;
      }
    if (small && support.size() <= k) {
      BalancedCertificate cert;
      for (std::size_t c : support) cert.entries.push_back({cols[c].first, cols[c].second, m[c], true, false});
      return cert;
    }
    if (depth >= 2) return std::nullopt;
    for (std::size_t c : support) {
      auto ex = excluded;
      ex.insert(c);
      if (auto r = run(ex, depth + 1)) return r;
    }
    return std::nullopt;
  }
};

}  // namespace

SkResult check_sk(const CompOrder& o, std::size_t k, long budget) {
  SkSearch search{o, k, budget, {}, 0};
  for (Subset a = 0; a < o.rel.size(); ++a)
    for (Subset b = 0; b < o.rel.size(); ++b)
      if (o.gt(a, b)) search.cols.emplace_back(a, b);
  SkResult res;
  if (!search.solve({})) {
    res.exhaustive = true;
    return res;
  }
  auto cert = search.run({}, 0);
  if (!cert) return res;
  if (!verify_certificate(*cert, o)) throw std::logic_error("S_k violation failed verification");
  res.violated = true;
  res.distinct = cert->entries.size();
  res.certificate = std::move(*cert);
  return res;
}

}  // namespace probcalc
