#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "probcalc/represent.hpp"

namespace probcalc {

QuadOrder QuadOrder::from_comparisons(int atoms, const std::vector<PairComparison>& cs, bool symmetric) {
  if (atoms < 0 || atoms > 4) throw std::invalid_argument("quadratic orders support at most 4 atoms");
  QuadOrder q;
  q.atoms = atoms;
  Subset n = Subset{1} << atoms;
  q.rel = Preorder(std::size_t{n} * n);
  for (std::size_t i = 0; i < q.rel.size(); ++i) q.rel.relate(i, i, CmpRel::Eq);
  if (symmetric)
    for (Subset a = 0; a < n; ++a)
      for (Subset b = 0; b < n; ++b) q.rel.relate(q.item(a, b), q.item(b, a), CmpRel::Eq);
  for (const auto& c : cs) {
    if (c.a >= n || c.b >= n || c.c >= n || c.d >= n) throw std::invalid_argument("comparison mentions a missing atom");
    q.rel.relate(q.item(c.a, c.b), q.item(c.c, c.d), c.rel);
  }
  q.rel.close();
  return q;
}

std::vector<QuadOrder::PairComparison> QuadOrder::comparisons() const {
  Subset n = Subset{1} << atoms;
  auto split = [&](std::size_t it) { return std::pair<Subset, Subset>(static_cast<Subset>(it >> atoms), static_cast<Subset>(it & (n - 1))); };
  std::vector<PairComparison> out;
  auto push = [&](std::size_t i, std::size_t j, CmpRel r) {
    auto [a, b] = split(i);
    auto [c, d] = split(j);
    out.push_back({a, b, c, d, r});
  };
  if (rel.total() && rel.transitive()) {
    auto cls = rel.classes();
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (std::size_t m = 1; m < cls[k].size(); ++m) push(cls[k][m], cls[k][0], CmpRel::Eq);
      if (k > 0) push(cls[k][0], cls[k - 1][0], CmpRel::Gt);
    }
    return out;
  }
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j) {
      if (i == j) continue;
      if (rel.gt(i, j)) push(i, j, CmpRel::Gt);
      else if (rel.geq(i, j) && rel.geq(j, i) && i < j) push(i, j, CmpRel::Eq);
      else if (rel.geq(i, j) && !rel.geq(j, i)) push(i, j, CmpRel::Geq);
    }
  return out;
}

// ---- axioms ----

namespace {

std::string pair_text(Subset a, Subset b) { return "(" + subset_to_text(a) + "," + subset_to_text(b) + ")"; }

std::string item_text(const QuadOrder& q, std::size_t it) {
  Subset n = Subset{1} << q.atoms;
  return pair_text(static_cast<Subset>(it >> q.atoms), static_cast<Subset>(it & (n - 1)));
}

// Indicator of A x B over atom pairs.
std::vector<std::int8_t> product_vector(const QuadOrder& q, std::size_t it) {
  Subset n = Subset{1} << q.atoms;
  Subset a = static_cast<Subset>(it >> q.atoms), b = static_cast<Subset>(it & (n - 1));
  std::vector<std::int8_t> v(static_cast<std::size_t>(q.atoms * q.atoms), 0);
  for (int i = 0; i < q.atoms; ++i)
    for (int j = 0; j < q.atoms; ++j) v[static_cast<std::size_t>(i * q.atoms + j)] = (a >> i & 1) && (b >> j & 1);
  return v;
}

std::string key_of(const std::vector<std::int8_t>& v) { return std::string(v.begin(), v.end()); }

AxiomCheck check_q5(const QuadOrder& q, int m) {
  AxiomCheck out{"Q5_" + std::to_string(m), true, ""};
  Subset om = (Subset{1} << q.atoms) - 1;
  std::size_t zero = q.item(0, om);
  std::vector<std::size_t> pos;
  for (std::size_t it = 0; it < q.rel.size(); ++it)
    if (q.rel.gt(it, zero)) pos.push_back(it);
  if (pos.empty()) return out;
  Subset n = Subset{1} << q.atoms;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  std::vector<Subset> A(static_cast<std::size_t>(m)), B(static_cast<std::size_t>(m));
  std::vector<int> base(static_cast<std::size_t>(m));
  std::iota(base.begin(), base.end(), 0);
  while (true) {
    for (int k = 0; k < m; ++k) {
      A[k] = static_cast<Subset>(pos[idx[k]] >> q.atoms);
      B[k] = static_cast<Subset>(pos[idx[k]] & (n - 1));
    }
    std::vector<int> pi = base;
    do {
      std::vector<int> tau = base;
      do {
        bool holds = true, strict = false;
        for (int k = 0; k + 1 < m && holds; ++k) {
          std::size_t l = q.item(A[pi[k]], B[tau[k]]), r = q.item(A[k], B[k]);
          holds = q.rel.geq(l, r);
          strict = strict || q.rel.gt(l, r);
        }
        if (!holds) continue;
        std::size_t l = q.item(A[m - 1], B[m - 1]), r = q.item(A[pi[m - 1]], B[tau[m - 1]]);
        bool ok = strict ? q.rel.gt(l, r) : q.rel.geq(l, r);
        if (!ok) {
          std::ostringstream os;
          os << "pairs";
          for (int k = 0; k < m; ++k) os << ' ' << pair_text(A[k], B[k]);
          os << " pi";
          for (int v : pi) os << ' ' << v + 1;
          os << " tau";
          for (int v : tau) os << ' ' << v + 1;
          os << " conclusion " << item_text(q, l) << (strict ? " > " : " >= ") << item_text(q, r) << " fails";
          out.ok = false;
          out.witness = os.str();
          return out;
        }
      } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));
    int k = m - 1;
    while (k >= 0 && ++idx[k] == pos.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

// Q6_m fails iff some strict difference plus m-1 weak differences sums to zero.
std::vector<AxiomCheck> check_q6(const QuadOrder& q, int bound, bool stop_early) {
  std::vector<AxiomCheck> out;
  std::vector<std::vector<std::int8_t>> vec(q.rel.size());
  for (std::size_t it = 0; it < q.rel.size(); ++it) vec[it] = product_vector(q, it);
  struct Diff {
    std::vector<std::int8_t> v;
    std::size_t p, r;
  };
  std::vector<Diff> weak, strict;
  std::unordered_map<std::string, std::size_t> seen_w, seen_s;
  for (std::size_t i = 0; i < q.rel.size(); ++i)
    for (std::size_t j = 0; j < q.rel.size(); ++j) {
      if (!q.rel.geq(i, j)) continue;
      std::vector<std::int8_t> d(vec[i].size());
      for (std::size_t c = 0; c < d.size(); ++c) d[c] = static_cast<std::int8_t>(vec[i][c] - vec[j][c]);
      std::string k = key_of(d);
      if (seen_w.emplace(k, weak.size()).second) weak.push_back({d, i, j});
      if (q.rel.gt(i, j) && seen_s.emplace(k, strict.size()).second) strict.push_back({d, i, j});
    }
  // Sums of exactly t weak differences, with a back pointer for witnesses.
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> reach;
  std::string zero(vec.empty() ? 0 : vec[0].size(), '\0');
  reach.emplace(zero, std::pair<std::string, std::size_t>{"", SIZE_MAX});
  std::vector<std::unordered_map<std::string, std::pair<std::string, std::size_t>>> layers{reach};
  const std::size_t cap = 2000000;
  for (int m = 1; m <= bound; ++m) {
    AxiomCheck c{"Q6_" + std::to_string(m), true, ""};
    const auto& cur = layers.back();
    for (const auto& s : strict) {
      std::string neg(s.v.size(), '\0');
      for (std::size_t k = 0; k < s.v.size(); ++k) neg[k] = static_cast<char>(-s.v[k]);
      auto it = cur.find(neg);
      if (it == cur.end()) continue;
      std::ostringstream os;
      os << "strict " << item_text(q, s.p) << " > " << item_text(q, s.r);
      std::string key = neg;
      for (std::size_t t = layers.size() - 1; t > 0; --t) {
        const auto& [prev, w] = layers[t].at(key);
        os << ", weak " << item_text(q, weak[w].p) << " >= " << item_text(q, weak[w].r);
        key = prev;
      }
      os << " balance";
      c.ok = false;
      c.witness = os.str();
      break;
    }
    out.push_back(c);
    if (!c.ok && stop_early) return out;
    if (m == bound) break;
    std::unordered_map<std::string, std::pair<std::string, std::size_t>> next;
    for (const auto& [k, bp] : cur) {
      for (std::size_t w = 0; w < weak.size(); ++w) {
        std::string s = k;
        for (std::size_t t = 0; t < s.size(); ++t) s[t] = static_cast<char>(s[t] + weak[w].v[t]);
        next.emplace(std::move(s), std::pair<std::string, std::size_t>{k, w});
      }
      if (next.size() > cap) break;
    }
    if (next.size() > cap) {
      out.push_back({"Q6_" + std::to_string(m + 1), true, "not checked: search space over limit"});
      return out;
    }
    layers.push_back(std::move(next));
  }
  return out;
}

}  // namespace

AxiomReport quad_check_axioms(const QuadOrder& q, int q5_bound, int q6_bound, bool stop_early) {
  AxiomReport rep;
  Subset n = Subset{1} << q.atoms, om = n - 1;
  auto done = [&] { return stop_early && !rep.empty() && !rep.back().ok; };

  AxiomCheck q1{"Q1", q.gt(om, om, 0, om), ""};
  if (!q1.ok) q1.witness = "not " + pair_text(om, om) + " > " + pair_text(0, om);
  rep.push_back(q1);
  if (done()) return rep;

  AxiomCheck q2{"Q2", true, ""};
  for (Subset a = 0; a < n && q2.ok; ++a)
    for (Subset b = 0; b < n && q2.ok; ++b)
      for (Subset c = 0; c < n; ++c)
        if (!q.geq(b, c, 0, a)) {
          q2 = {"Q2", false, "not " + pair_text(b, c) + " >= " + pair_text(0, a)};
          break;
        }
  rep.push_back(q2);
  if (done()) return rep;

  AxiomCheck q3{"Q3", true, ""};
  for (Subset a = 0; a < n && q3.ok; ++a)
    for (Subset b = 0; b < n; ++b)
      if (!q.geq(a, b, b, a)) {
        q3 = {"Q3", false, "not " + pair_text(a, b) + " >= " + pair_text(b, a)};
        break;
      }
  rep.push_back(q3);
  if (done()) return rep;

  AxiomCheck q4{"Q4", true, ""};
  for (std::size_t i = 0; i < q.rel.size() && q4.ok; ++i)
    for (std::size_t j = 0; j < q.rel.size(); ++j)
      if (!q.rel.geq(i, j) && !q.rel.geq(j, i)) {
        q4 = {"Q4", false, item_text(q, i) + " and " + item_text(q, j) + " incomparable"};
        break;
      }
  rep.push_back(q4);
  if (done()) return rep;

  for (int m = 2; m <= q5_bound; ++m) {
    rep.push_back(check_q5(q, m));
    if (done()) return rep;
  }
  for (auto& c : check_q6(q, q6_bound, stop_early)) rep.push_back(std::move(c));
  return rep;
}

// ---- matrices ----

Rational BilinearMatrix::apply(Subset a, Subset b) const {
  Rational r = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (a >> i & 1)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (b >> j & 1) r += m[i][j];
  return r;
}

std::size_t BilinearMatrix::rank() const {
  auto t = m;
  std::size_t r = 0, cols = t.empty() ? 0 : t[0].size();
  for (std::size_t c = 0; c < cols && r < t.size(); ++c) {
    std::size_t p = r;
    while (p < t.size() && t[p][c] == 0) ++p;
    if (p == t.size()) continue;
    std::swap(t[p], t[r]);
    for (std::size_t i = r + 1; i < t.size(); ++i) {
      if (t[i][c] == 0) continue;
      Rational k = t[i][c] / t[r][c];
      for (std::size_t j = c; j < cols; ++j) t[i][j] -= k * t[r][j];
    }
    ++r;
  }
  return r;
}

bool BilinearMatrix::symmetric() const {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != m[j][i]) return false;
  return true;
}

QuadOrder order_from_matrix(const BilinearMatrix& mat) {
  for (const auto& row : mat.m)
    if (row.size() != mat.size()) throw std::invalid_argument("matrix must be square");
  if (mat.size() > 4) throw std::invalid_argument("quadratic orders support at most 4 atoms");
  QuadOrder q;
  q.atoms = static_cast<int>(mat.size());
  Subset n = Subset{1} << q.atoms;
  std::vector<Rational> v(std::size_t{n} * n);
  for (Subset a = 0; a < n; ++a)
    for (Subset b = 0; b < n; ++b) v[q.item(a, b)] = mat.apply(a, b);
  q.rel = Preorder::from_values(v);
  return q;
}

// ---- Q(sqrt 5) ----

int Surd5::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sa == 0) return sb;
  if (sb == 0 || sa == sb) return sa;
  Rational lhs = a * a, rhs = 5 * b * b;
  return lhs > rhs ? sa : sb;
}

double Surd5::to_double() const { return a.get_d() + b.get_d() * std::sqrt(5.0); }

std::string Surd5::to_string() const {
  if (b == 0) return probcalc::to_string(a);
  std::string r = b == 1 ? "sqrt(5)" : b == -1 ? "-sqrt(5)" : probcalc::to_string(b) + "*sqrt(5)";
  if (a == 0) return r;
  std::string s = probcalc::to_string(a);
  return b > 0 ? s + " + " + r : s + " - " + (r[0] == '-' ? r.substr(1) : r);
}

Surd5 operator+(const Surd5& x, const Surd5& y) { return {x.a + y.a, x.b + y.b}; }
Surd5 operator-(const Surd5& x, const Surd5& y) { return {x.a - y.a, x.b - y.b}; }
Surd5 operator*(const Surd5& x, const Surd5& y) { return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a}; }
bool operator<(const Surd5& x, const Surd5& y) { return (x - y).sign() < 0; }
bool operator>=(const Surd5& x, const Surd5& y) { return !(x < y); }
bool operator==(const Surd5& x, const Surd5& y) { return x.a == y.a && x.b == y.b; }

// ---- two atoms ----

namespace {

// s(A) with s({0}) = 1 and s({1}) = x, as coefficients of 1, x.
std::array<Rational, 2> linear_of(Subset s) {
  return {Rational((s & 1) ? 1 : 0), Rational((s & 2) ? 1 : 0)};
}

// s(A) s(B) as coefficients of 1, x, x^2.
std::array<Rational, 3> quadratic_of(Subset a, Subset b) {
  auto p = linear_of(a), q = linear_of(b);
  return {p[0] * q[0], p[0] * q[1] + p[1] * q[0], p[1] * q[1]};
}

bool rational_sqrt(const Rational& v, Rational& out) {
  if (v < 0) return false;
  Integer n = v.get_num(), d = v.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  out = Rational(sqrt(n), sqrt(d));
  return true;
}

// Real roots of c0 + c1 x + c2 x^2 in Q(sqrt 5).
std::vector<Surd5> roots(const std::array<Rational, 3>& c) {
  if (c[2] == 0) {
    if (c[1] == 0) return {};
    return {Surd5{-c[0] / c[1], 0}};
  }
  Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
  if (disc < 0) return {};
  Rational r;
  Surd5 root;
  if (rational_sqrt(disc, r)) root = {r, 0};
  else if (rational_sqrt(disc / 5, r)) root = {0, r};
  else throw std::logic_error("root outside Q(sqrt 5)");
  Surd5 base{-c[1] / (2 * c[2]), 0}, half{1 / (2 * c[2]), 0};
  return {base + half * root, base - half * root};
}

Surd5 eval(const std::array<Rational, 3>& c, const Surd5& x) {
  return Surd5{c[0], 0} + Surd5{c[1], 0} * x + Surd5{c[2], 0} * x * x;
}

QuadOrder order_at(const Surd5& x) {
  QuadOrder q;
  q.atoms = 2;
  std::vector<Surd5> v(16);
  for (Subset a = 0; a < 4; ++a)
    for (Subset b = 0; b < 4; ++b) v[q.item(a, b)] = eval(quadratic_of(a, b), x);
  q.rel = Preorder::from_values(v);
  return q;
}

std::vector<QuadRegion> build_regions() {
  std::vector<Surd5> crit{Surd5{0, 0}};
  std::vector<std::array<Rational, 3>> polys;
  for (Subset a = 1; a < 4; ++a)
    for (Subset b = a; b < 4; ++b) polys.push_back(quadratic_of(a, b));
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      std::array<Rational, 3> d{polys[i][0] - polys[j][0], polys[i][1] - polys[j][1], polys[i][2] - polys[j][2]};
      for (const auto& r : roots(d))
        if (r.sign() > 0) crit.push_back(r);
    }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<QuadRegion> out;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    QuadRegion pt;
    pt.point = true;
    pt.lo = pt.hi = pt.sample = crit[i];
    pt.order = order_at(pt.sample);
    out.push_back(pt);
    QuadRegion open;
    open.lo = crit[i];
    if (i + 1 < crit.size()) {
      open.hi = crit[i + 1];
      open.sample = (crit[i] + crit[i + 1]) * Surd5{Rational(1, 2), 0};
    } else {
      open.unbounded = true;
      open.sample = crit[i] + Surd5{1, 0};
    }
    open.order = order_at(open.sample);
    out.push_back(open);
  }
  QuadRegion deg;
  deg.degenerate = true;
  BilinearMatrix m{{{0, 0}, {0, 1}}};
  deg.order = order_from_matrix(m);
  out.push_back(deg);
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].order.rel == out[i - 1].order.rel) throw std::logic_error("adjacent regions induce the same order");
  return out;
}

}  // namespace

std::string QuadRegion::description() const {
  if (degenerate) return "degenerate";
  if (point) return "x = " + lo.to_string();
  if (unbounded) return "x > " + lo.to_string();
  return lo.to_string() + " < x < " + hi.to_string();
}

std::string QuadRegion::matrix() const { return degenerate ? "[[0,0],[0,1]]" : "[[1,x],[x,x^2]]"; }

std::vector<double> QuadRegion::measure() const {
  if (degenerate) return {0.0, 1.0};
  double x = sample.to_double();
  return {1 / (1 + x), x / (1 + x)};
}

const std::vector<QuadRegion>& quad_regions_n2() {
  static const std::vector<QuadRegion> regions = build_regions();
  return regions;
}

QuadN2Result quad_representable_n2(const QuadOrder& q) {
  if (q.atoms != 2) throw std::invalid_argument("quad_representable_n2 needs exactly two atoms");
  QuadN2Result r;
  if (!q.rel.total()) {
    r.reason = "order is not total";
    return r;
  }
  for (Subset a = 0; a < 4; ++a)
    for (Subset b = 0; b < 4; ++b)
      if (!q.geq(a, b, b, a)) {
        r.reason = "order is not symmetric at " + pair_text(a, b);
        return r;
      }
  const auto& regions = quad_regions_n2();
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (regions[i].order.rel == q.rel) {
      r.yes = true;
      r.region = i;
      return r;
    }
  r.reason = "not among the representable orders";
  return r;
}

std::vector<QuadOrder> quad_sweep_n2(int q6_bound) {
  // Class 0 holds every (∅,A); classes 1..6 the unordered pairs of nonempty events.
  auto cls = [](Subset a, Subset b) -> int {
    if (!a || !b) return 0;
    if (a > b) std::swap(a, b);
    static const int table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 4}, {0, 2, 3, 5}, {0, 4, 5, 6}};
    return table[a][b];
  };
  std::vector<QuadOrder> out;
  std::vector<int> ranks;
  std::function<void(int, int)> rec = [&](int i, int k) {
    if (i == 7) {
      QuadOrder q;
      q.atoms = 2;
      std::vector<int> v(16);
      for (Subset a = 0; a < 4; ++a)
        for (Subset b = 0; b < 4; ++b) v[q.item(a, b)] = ranks[cls(a, b)];
      q.rel = Preorder::from_values(v);
      if (all_pass(quad_check_axioms(q, 2, q6_bound, true))) out.push_back(std::move(q));
      return;
    }
    for (int r = 0; r < k; ++r) {
      ranks.push_back(r);
      rec(i + 1, k);
      ranks.pop_back();
    }
    for (int r = 0; r <= k; ++r) {
      auto saved = ranks;
      for (auto& x : ranks)
        if (x >= r) ++x;
      ranks.push_back(r);
      rec(i + 1, k + 1);
      ranks = saved;
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace probcalc
