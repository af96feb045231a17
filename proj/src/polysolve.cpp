#include "probcalc/polysolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "probcalc/linsolve.hpp"
#include "probcalc/simplex.hpp"

namespace probcalc {

// ---- intervals ----

namespace {

Interval imul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Rational qpow(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

Interval ipow(const Interval& a, unsigned e) {
  Rational l = qpow(a.lo, e), h = qpow(a.hi, e);
  if (e % 2 == 1 || a.lo >= 0) return {l, h};
  if (a.hi <= 0) return {h, l};
  return {0, std::max(l, h)};
}

Interval natural(const Poly& p, const Box& box) {
  Interval acc{0, 0};
  for (const auto& [m, c] : p.terms()) {
    Interval t{1, 1};
    for (const auto& [v, e] : m) t = imul(t, ipow(box.at(v), e));
    if (c >= 0) acc = {acc.lo + c * t.lo, acc.hi + c * t.hi};
    else acc = {acc.lo + c * t.hi, acc.hi + c * t.lo};
  }
  return acc;
}

Rational binom(unsigned n, unsigned k) {
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

std::optional<Interval> bernstein(const Poly& p, const Box& box) {
  std::set<Var> vs = p.vars();
  if (vs.empty() || vs.size() > 4) return std::nullopt;
  Poly q = p;
  for (Var v : vs) q = q.substitute(v, Poly(box.at(v).lo) + Poly::var(v) * (box.at(v).hi - box.at(v).lo));
  std::vector<Var> order(vs.begin(), vs.end());
  std::vector<unsigned> deg(order.size(), 0);
  for (const auto& [m, c] : q.terms())
    for (const auto& [v, e] : m) {
      auto k = static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
      deg[k] = std::max(deg[k], e);
    }
  std::size_t total = 1;
  for (unsigned d : deg) total *= d + 1;
  if (total > 1024) return std::nullopt;
  std::vector<std::vector<unsigned>> kexp;
  std::vector<Rational> kc;
  for (const auto& [m, c] : q.terms()) {
    std::vector<unsigned> k(order.size(), 0);
    for (const auto& [v, e] : m) k[static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin())] = e;
    kexp.push_back(std::move(k));
    kc.push_back(c);
  }
  std::optional<Interval> out;
  std::vector<unsigned> idx(order.size(), 0);
  for (std::size_t it = 0; it < total; ++it) {
    Rational b = 0;
    for (std::size_t t = 0; t < kexp.size(); ++t) {
      bool below = true;
      Rational f = kc[t];
      for (std::size_t j = 0; j < order.size() && below; ++j) {
        if (kexp[t][j] > idx[j]) below = false;
        else f *= binom(idx[j], kexp[t][j]) / binom(deg[j], kexp[t][j]);
      }
      if (below) b += f;
    }
    if (!out) out = Interval{b, b};
    else {
      if (b < out->lo) out->lo = b;
      if (b > out->hi) out->hi = b;
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (++idx[j] <= deg[j]) break;
      idx[j] = 0;
    }
  }
  return out;
}

}  // namespace

Interval enclose(const Poly& p, const Box& box) {
  Interval a = natural(p, box);
  if (auto b = bernstein(p, box)) {
    if (b->lo > a.lo) a.lo = b->lo;
    if (b->hi < a.hi) a.hi = b->hi;
  }
  return a;
}

// ---- branch and prune ----

BpProblem bp_problem(const PolySystem& s) {
  BpProblem p;
  p.names = s.var_names;
  p.rows = s.rows;
  if (s.simplex) {
    p.simplex_vars = s.nvars();
  } else {
    if (s.box.size() != s.nvars()) throw std::invalid_argument("branch and prune needs a bounded domain");
    for (const auto& [lo, hi] : s.box) p.bounds.push_back({lo, hi});
  }
  return p;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  bool active = false;
  explicit Deadline(long ms) {
    if (ms > 0) {
      active = true;
      end = Clock::now() + std::chrono::milliseconds(ms);
    }
  }
  bool passed() const { return active && Clock::now() >= end; }
};

bool row_infeasible(RowRel rel, const Interval& v) {
  switch (rel) {
    case RowRel::Eq: return v.lo > 0 || v.hi < 0;
    case RowRel::Geq: return v.hi < 0;
    case RowRel::Gt: return v.hi <= 0;
    case RowRel::Neq: return v.lo == 0 && v.hi == 0;
  }
  return false;
}

bool ground_ok(const LinRow& r) {
  switch (r.rel) {
    case RowRel::Eq: return r.rhs == 0;
    case RowRel::Geq: return 0 >= r.rhs;
    case RowRel::Gt: return 0 > r.rhs;
    case RowRel::Neq: return r.rhs != 0;
  }
  return false;
}

// Variables in nonlinear monomials are split; the rest are projected away.
struct Reduced {
  std::vector<std::string> names;
  std::size_t nk = 0;
  std::vector<Var> orig;           // original index of reduced vars, or UINT32_MAX for row slacks
  std::vector<PolyRow> rows;       // nonlinear rows
  std::vector<LinRow> shadow;      // linear rows
  std::vector<Monomial> monos;     // distinct nonlinear monomials of `rows`
  Box root;
  std::string dead;
  bool unbounded = false;
};

std::optional<std::pair<Rational, Rational>> lp_range(const std::vector<LinRow>& rows, std::size_t nvars, Var v) {
  LpProblem lp;
  lp.nvars = nvars;
  lp.free_var.assign(nvars, true);
  for (auto r : rows) {
    if (r.rel == RowRel::Gt) r.rel = RowRel::Geq;
    lp.rows.push_back(std::move(r));
  }
  lp.maximize = {{v, Rational(1)}};
  LpResult hi = lp_solve(lp);
  if (hi.status == LpResult::Status::Infeasible) return std::nullopt;
  lp.maximize = {{v, Rational(-1)}};
  LpResult lo = lp_solve(lp);
  if (hi.status != LpResult::Status::Optimal || lo.status != LpResult::Status::Optimal)
    throw std::domain_error("unbounded");
  return std::make_pair(-lo.value, hi.value);
}

std::optional<Rational> proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return std::nullopt;
  Rational c = a.terms().begin()->second / b.terms().begin()->second;
  if (a == b * c) return c;
  return std::nullopt;
}

Reduced reduce(const BpProblem& p) {
  Reduced r;
  std::size_t n = p.names.size();
  // Strict rows that are multiples of equality rows.
  for (std::size_t i = 0; i < p.rows.size() && r.dead.empty(); ++i) {
    if (p.rows[i].rel != RowRel::Gt) continue;
    if (p.rows[i].p.is_constant() && p.rows[i].p.constant() <= 0) r.dead = "strict row " + std::to_string(i) + " is constant";
    for (std::size_t j = 0; j < p.rows.size() && r.dead.empty(); ++j)
      if (p.rows[j].rel == RowRel::Eq && proportional(p.rows[i].p, p.rows[j].p))
        r.dead = "strict row " + std::to_string(i) + " against row " + std::to_string(j);
  }
  if (!r.dead.empty()) return r;

  std::set<Var> K;
  for (const auto& row : p.rows) {
    if (row.rel == RowRel::Neq) continue;
    for (const auto& [m, c] : row.p.terms())
      if (mono_degree(m) >= 2)
        for (const auto& [v, e] : m) K.insert(v);
  }
  LinSystem L;
  L.simplex = false;
  L.var_names = p.names;
  std::vector<PolyRow> nonlin;
  auto add_var = [&](const std::string& name) {
    L.var_names.push_back(name);
    return static_cast<Var>(L.var_names.size() - 1);
  };
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (row.rel == RowRel::Neq) continue;
    if (row.p.degree() <= 1) {
      LinRow lr;
      lr.rel = row.rel;
      for (const auto& [m, c] : row.p.terms()) {
        if (m.empty()) lr.rhs = -c;
        else lr.coeffs[m[0].first] = c;
      }
      L.rows.push_back(std::move(lr));
      continue;
    }
    Poly keep;
    LinRow def;
    def.rel = RowRel::Eq;
    for (const auto& [m, c] : row.p.terms()) {
      if (m.size() == 1 && m[0].second == 1 && !K.count(m[0].first)) def.coeffs[m[0].first] = -c;
      else keep += Poly::monomial(m, c);
    }
    if (!def.coeffs.empty()) {
      Var t = add_var("t" + std::to_string(i));
      def.coeffs[t] = 1;
      keep += Poly::var(t);
      L.rows.push_back(std::move(def));
    }
    nonlin.push_back({keep, row.rel});
  }
  if (p.simplex_vars > 0) {
    LinRow sum;
    sum.rel = RowRel::Eq;
    sum.rhs = 1;
    for (Var v = 0; v < p.simplex_vars; ++v) {
      sum.coeffs[v] = 1;
      L.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Geq, 0});
    }
    L.rows.push_back(std::move(sum));
  }
  for (std::size_t i = 0; i < p.bounds.size(); ++i) {
    Var v = static_cast<Var>(p.simplex_vars + i);
    L.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Geq, p.bounds[i].lo});
    L.rows.push_back(LinRow{{{v, Rational(-1)}}, RowRel::Geq, -p.bounds[i].hi});
  }
  std::vector<Var> elim;
  for (Var v = 0; v < n; ++v)
    if (!K.count(v)) elim.push_back(v);
  auto proj = fm_project(L, elim, 20000);
  std::vector<Var> keep_vars(K.begin(), K.end());
  std::size_t nk = keep_vars.size();
  for (Var v = static_cast<Var>(n); v < L.var_names.size(); ++v) keep_vars.push_back(v);
  std::vector<LinRow> lin_rows;
  if (proj) {
    lin_rows = proj->rows;
  } else {
    for (Var v : elim) keep_vars.push_back(v);
    lin_rows = L.rows;
  }
  std::map<Var, Var> ren;
  for (std::size_t i = 0; i < keep_vars.size(); ++i) {
    ren[keep_vars[i]] = static_cast<Var>(i);
    r.names.push_back(L.var_names[keep_vars[i]]);
    r.orig.push_back(keep_vars[i] < n ? keep_vars[i] : UINT32_MAX);
  }
  r.nk = nk;
  for (const auto& lr : lin_rows) {
    if (lr.coeffs.empty()) {
      if (!ground_ok(lr)) r.dead = "shadow";
      continue;
    }
    LinRow out;
    out.rel = lr.rel;
    out.rhs = lr.rhs;
    for (const auto& [v, c] : lr.coeffs) out.coeffs[ren.at(v)] = c;
    r.shadow.push_back(std::move(out));
  }
  if (!r.dead.empty()) return r;
  std::set<Monomial> monos;
  for (auto& row : nonlin) {
    row.p = row.p.rename(ren);
    for (const auto& [m, c] : row.p.terms())
      if (mono_degree(m) >= 2) monos.insert(m);
  }
  r.rows = std::move(nonlin);
  r.monos.assign(monos.begin(), monos.end());
  try {
    for (Var v = 0; v < r.names.size(); ++v) {
      auto range = lp_range(r.shadow, r.names.size(), v);
      if (!range) {
        r.dead = "shadow";
        return r;
      }
      r.root.push_back({range->first, range->second});
    }
  } catch (const std::domain_error&) {
    r.unbounded = true;
  }
  return r;
}

// Exact LP over shadow rows, box rows, McCormick envelopes and the linearized rows.
bool relaxation_infeasible(const Reduced& r, const Box& box) {
  std::size_t nr = r.names.size();
  std::size_t nw = r.monos.size();
  bool strict = false;
  for (const auto& row : r.rows) strict |= row.rel == RowRel::Gt;
  for (const auto& row : r.shadow) strict |= row.rel == RowRel::Gt;
  Var mu = static_cast<Var>(nr + nw);
  LpProblem lp;
  lp.nvars = nr + nw + (strict ? 1 : 0);
  lp.free_var.assign(lp.nvars, true);
  auto add = [&](LinRow row) {
    if (row.rel == RowRel::Gt) {
      row.coeffs[mu] -= 1;
      row.rel = RowRel::Geq;
    }
    lp.rows.push_back(std::move(row));
  };
  for (const auto& row : r.shadow) add(row);
  for (Var v = 0; v < nr; ++v) {
    lp.rows.push_back(LinRow{{{v, Rational(1)}}, RowRel::Geq, box[v].lo});
    lp.rows.push_back(LinRow{{{v, Rational(-1)}}, RowRel::Geq, -box[v].hi});
  }
  std::map<Monomial, Var> wvar;
  for (std::size_t k = 0; k < nw; ++k) {
    const Monomial& m = r.monos[k];
    Var w = static_cast<Var>(nr + k);
    wvar[m] = w;
    Interval J = enclose(Poly::monomial(m), box);
    lp.rows.push_back(LinRow{{{w, Rational(1)}}, RowRel::Geq, J.lo});
    lp.rows.push_back(LinRow{{{w, Rational(-1)}}, RowRel::Geq, -J.hi});
    if (m.size() == 2 && m[0].second == 1 && m[1].second == 1) {
      Var u = m[0].first, v = m[1].first;
      const Rational &a = box[u].lo, &b = box[u].hi, &c = box[v].lo, &d = box[v].hi;
      lp.rows.push_back(LinRow{{{w, Rational(1)}, {u, -c}, {v, -a}}, RowRel::Geq, -a * c});
      lp.rows.push_back(LinRow{{{w, Rational(1)}, {u, -d}, {v, -b}}, RowRel::Geq, -b * d});
      lp.rows.push_back(LinRow{{{w, Rational(-1)}, {u, d}, {v, a}}, RowRel::Geq, a * d});
      lp.rows.push_back(LinRow{{{w, Rational(-1)}, {u, c}, {v, b}}, RowRel::Geq, b * c});
    } else if (m.size() == 1 && m[0].second == 2) {
      Var u = m[0].first;
      const Rational &a = box[u].lo, &b = box[u].hi;
      lp.rows.push_back(LinRow{{{w, Rational(-1)}, {u, a + b}}, RowRel::Geq, a * b});
      for (const Rational& t : {a, b, Rational((a + b) / 2)})
        lp.rows.push_back(LinRow{{{w, Rational(1)}, {u, -2 * t}}, RowRel::Geq, -t * t});
    }
  }
  for (const auto& row : r.rows) {
    LinRow lr;
    lr.rel = row.rel;
    for (const auto& [m, c] : row.p.terms()) {
      if (m.empty()) lr.rhs = -c;
      else if (mono_degree(m) == 1) lr.coeffs[m[0].first] += c;
      else lr.coeffs[wvar.at(m)] += c;
    }
    add(std::move(lr));
  }
  if (strict) {
    lp.rows.push_back(LinRow{{{mu, Rational(-1)}}, RowRel::Geq, -1});
    lp.maximize = {{mu, Rational(1)}};
  }
  LpResult res = lp_solve(lp);
  if (res.status == LpResult::Status::Infeasible) return true;
  return strict && res.status == LpResult::Status::Optimal && res.value <= 0;
}

std::string check_box(const Reduced& r, const Box& box) {
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    if (row_infeasible(r.rows[i].rel, enclose(r.rows[i].p, box))) return "interval row " + std::to_string(i);
  if (relaxation_infeasible(r, box)) return "relaxation";
  return "";
}

bool reason_holds(const Reduced& r, const Box& box, const std::string& reason) {
  if (reason == "relaxation") return relaxation_infeasible(r, box);
  const std::string pre = "interval row ";
  if (reason.compare(0, pre.size(), pre) == 0) {
    std::size_t i = std::stoul(reason.substr(pre.size()));
    return i < r.rows.size() && row_infeasible(r.rows[i].rel, enclose(r.rows[i].p, box));
  }
  return false;
}

std::pair<Box, Box> bisect(const Box& b, std::size_t v) {
  Box lo = b, hi = b;
  Rational mid = (b[v].lo + b[v].hi) / 2;
  lo[v].hi = mid;
  hi[v].lo = mid;
  return {lo, hi};
}

bool same_box(const Box& a, const Box& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].lo != b[i].lo || a[i].hi != b[i].hi) return false;
  return true;
}

struct Search {
  const Reduced& r;
  const PolyBudget& b;
  Deadline deadline;
  std::size_t boxes = 0;
  int max_depth = 0;
  std::size_t leaves = 0;
  std::optional<Box> survivor;

  bool explore(PruneNode& node, int depth) {
    ++boxes;
    max_depth = std::max(max_depth, depth);
    std::string why = check_box(r, node.box);
    if (!why.empty()) {
      node.reason = why;
      ++leaves;
      return true;
    }
    std::size_t best = r.nk;
    Rational width = 0;
    for (std::size_t v = 0; v < r.nk; ++v) {
      Rational w = node.box[v].hi - node.box[v].lo;
      if (w > width) {
        width = w;
        best = v;
      }
    }
    if (best == r.nk || depth >= b.bp_depth) {
      survivor = node.box;
      return false;
    }
    if (boxes >= b.bp_boxes || deadline.passed()) return false;
    auto [lo, hi] = bisect(node.box, best);
    node.split = static_cast<int>(best);
    node.children.resize(2);
    node.children[0].box = std::move(lo);
    node.children[1].box = std::move(hi);
    for (auto& c : node.children)
      if (!explore(c, depth + 1)) return false;
    return true;
  }
};

bool replay_node(const Reduced& r, const PruneNode& n) {
  if (n.children.empty()) return reason_holds(r, n.box, n.reason);
  if (n.split < 0 || static_cast<std::size_t>(n.split) >= r.nk || n.children.size() != 2) return false;
  auto [lo, hi] = bisect(n.box, static_cast<std::size_t>(n.split));
  if (!same_box(lo, n.children[0].box) || !same_box(hi, n.children[1].box)) return false;
  return replay_node(r, n.children[0]) && replay_node(r, n.children[1]);
}

std::string box_text(const Box& b, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ", ";
    os << names[i] << " in [" << to_string(b[i].lo) << ", " << to_string(b[i].hi) << "]";
  }
  return os.str();
}

void node_text(std::ostream& os, const PruneNode& n, const std::vector<std::string>& names, int indent) {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "[" << box_text(n.box, names) << "] ";
  if (n.children.empty()) {
    os << n.reason << '\n';
    return;
  }
  os << "split " << names[static_cast<std::size_t>(n.split)] << '\n';
  for (const auto& c : n.children) node_text(os, c, names, indent + 1);
}

}  // namespace

BpResult branch_and_prune(const BpProblem& p, const PolyBudget& b) {
  BpResult res;
  Reduced r = reduce(p);
  res.tree.var_names = r.names;
  if (!r.dead.empty()) {
    res.kind = BpResult::Kind::UnsatCertified;
    res.tree.root.reason = r.dead;
    res.tree.leaves = 1;
    return res;
  }
  if (r.unbounded) return res;
  Search s{r, b, Deadline(b.timeout_ms), 0, 0, 0, std::nullopt};
  res.tree.root.box = r.root;
  bool pruned = s.explore(res.tree.root, 0);
  res.boxes = s.boxes;
  if (pruned) {
    res.kind = BpResult::Kind::UnsatCertified;
    res.tree.leaves = s.leaves;
    res.tree.depth = s.max_depth;
    return res;
  }
  res.tree = PruneTree{};
  if (s.survivor) {
    res.kind = BpResult::Kind::SatBoxHint;
    res.hint.assign(p.names.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t v = 0; v < r.names.size(); ++v)
      if (r.orig[v] != UINT32_MAX) res.hint[r.orig[v]] = Rational((*s.survivor)[v].lo + (*s.survivor)[v].hi).get_d() / 2;
  }
  return res;
}

BpResult branch_and_prune(const PolySystem& s, const PolyBudget& b) { return branch_and_prune(bp_problem(s), b); }

bool replay_prune_tree(const BpProblem& p, const PruneTree& t) {
  Reduced r = reduce(p);
  if (r.names != t.var_names) return false;
  if (!r.dead.empty()) return t.root.children.empty() && t.root.reason == r.dead;
  if (r.unbounded || !same_box(r.root, t.root.box)) return false;
  return replay_node(r, t.root);
}

std::string prune_tree_to_text(const PruneTree& t) {
  std::ostringstream os;
  os << "prune tree: " << t.leaves << " leaves, depth " << t.depth << '\n';
  node_text(os, t.root, t.var_names, 0);
  return os.str();
}

// ---- searches ----

NumericPoint measure_point(const PolySystem& s, const std::vector<double>& x) {
  NumericPoint pt;
  pt.x = x;
  pt.residual = 0;
  pt.margin = std::numeric_limits<double>::infinity();
  for (const auto& r : s.rows) {
    double v = r.p.eval(x);
    switch (r.rel) {
      case RowRel::Eq: pt.residual = std::max(pt.residual, std::fabs(v)); break;
      case RowRel::Geq: pt.residual = std::max(pt.residual, -v); break;
      case RowRel::Gt: pt.margin = std::min(pt.margin, v); break;
      case RowRel::Neq: pt.margin = std::min(pt.margin, std::fabs(v)); break;
    }
  }
  if (s.simplex) {
    double sum = 0;
    for (double v : x) {
      pt.residual = std::max(pt.residual, -v);
      sum += v;
    }
    pt.residual = std::max(pt.residual, std::fabs(sum - 1));
  } else {
    for (std::size_t i = 0; i < s.box.size() && i < x.size(); ++i) {
      pt.residual = std::max(pt.residual, s.box[i].first.get_d() - x[i]);
      pt.residual = std::max(pt.residual, x[i] - s.box[i].second.get_d());
    }
  }
  return pt;
}

namespace {

bool prescreen(const PolySystem& s, const std::vector<double>& x) {
  for (const auto& r : s.rows) {
    double v = r.p.eval(x);
    switch (r.rel) {
      case RowRel::Eq:
        if (std::fabs(v) > 1e-9) return false;
        break;
      case RowRel::Geq:
      case RowRel::Gt:
        if (v < -1e-9) return false;
        break;
      case RowRel::Neq: break;
    }
  }
  return true;
}

double violation(const PolySystem& s, const std::vector<double>& x) {
  double t = 0;
  for (const auto& r : s.rows) {
    double v = r.p.eval(x);
    switch (r.rel) {
      case RowRel::Eq: t += std::fabs(v); break;
      case RowRel::Geq: t += std::max(0.0, -v); break;
      case RowRel::Gt: t += std::max(0.0, 1e-12 - v); break;
      case RowRel::Neq: t += std::fabs(v) < 1e-12 ? 1e-12 : 0.0; break;
    }
  }
  return t;
}

std::vector<long> denominators(long max_den) {
  std::vector<long> ds;
  for (long d : {1L, 2L, 3L, 4L, 5L, 6L, 8L, 10L, 12L, 16L, 20L, 24L, 32L, 48L, 64L})
    if (d <= max_den) ds.push_back(d);
  if (max_den > 0 && (ds.empty() || ds.back() != max_den)) ds.push_back(max_den);
  return ds;
}

double choose(double n, double k) {
  double r = 1;
  for (double i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct GridPoint {
  std::vector<long> k;
  long D;
};

std::vector<Rational> grid_value(const PolySystem& s, const std::vector<long>& k, long D) {
  std::vector<Rational> x(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (s.simplex) x[i] = Rational(k[i], D);
    else x[i] = s.box[i].first + (s.box[i].second - s.box[i].first) * Rational(k[i], D);
    x[i].canonicalize();
  }
  return x;
}

std::vector<double> grid_double(const PolySystem& s, const std::vector<long>& k, long D) {
  std::vector<double> x(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    double t = static_cast<double>(k[i]) / static_cast<double>(D);
    x[i] = s.simplex ? t : s.box[i].first.get_d() + (s.box[i].second.get_d() - s.box[i].first.get_d()) * t;
  }
  return x;
}

std::optional<std::vector<Rational>> try_point(const PolySystem& s, const std::vector<long>& k, long D) {
  if (!prescreen(s, grid_double(s, k, D))) return std::nullopt;
  auto x = grid_value(s, k, D);
  if (system_holds(s, x)) return x;
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Rational>> rational_search(const PolySystem& s, const PolyBudget& b) {
  std::size_t n = s.nvars();
  if (n == 0) return std::nullopt;
  if (!s.simplex && s.box.size() != n) return std::nullopt;
  {
    std::vector<Rational> mid(n);
    for (std::size_t i = 0; i < n; ++i)
      mid[i] = s.simplex ? Rational(1, static_cast<long>(n)) : Rational((s.box[i].first + s.box[i].second) / 2);
    if (system_holds(s, mid)) return mid;
  }
  auto ds = denominators(b.max_denom);
  double total = 0;
  for (long D : ds)
    total += s.simplex ? choose(static_cast<double>(D + static_cast<long>(n) - 1), static_cast<double>(n - 1))
                       : std::pow(static_cast<double>(D + 1), static_cast<double>(n));
  Deadline deadline(b.timeout_ms);
  if (total <= static_cast<double>(b.grid_points)) {
    for (long D : ds) {
      std::vector<long> k(n, 0);
      std::optional<std::vector<Rational>> found;
      if (s.simplex) {
        std::function<bool(std::size_t, long)> rec = [&](std::size_t i, long left) {
          if (i + 1 == n) {
            k[i] = left;
            found = try_point(s, k, D);
            return found.has_value();
          }
          for (long v = 0; v <= left; ++v) {
            k[i] = v;
            if (rec(i + 1, left - v)) return true;
          }
          return false;
        };
        rec(0, D);
      } else {
        while (true) {
          if ((found = try_point(s, k, D))) break;
          std::size_t j = 0;
          while (j < n && ++k[j] > D) k[j++] = 0;
          if (j == n) break;
        }
      }
      if (found) return found;
    }
    return std::nullopt;
  }
  // Randomized grid points refined by single-unit moves.
  std::mt19937_64 rng(b.seed);
  long D = b.max_denom;
  std::size_t steps = 0;
  while (steps < b.hill_steps && !deadline.passed()) {
    std::vector<long> k(n, 0);
    if (s.simplex) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (long u = 0; u < D; ++u) ++k[pick(rng)];
    } else {
      std::uniform_int_distribution<long> pick(0, D);
      for (auto& v : k) v = pick(rng);
    }
    double cur = violation(s, grid_double(s, k, D));
    bool moved = true;
    while (moved && steps < b.hill_steps) {
      if (cur == 0) {
        if (auto x = try_point(s, k, D)) return x;
        break;
      }
      moved = false;
      for (std::size_t i = 0; i < n && !moved; ++i)
        for (std::size_t j = 0; j < n && !moved; ++j) {
          if (i == j) continue;
          std::vector<long> t = k;
          if (s.simplex) {
            if (t[i] == 0) continue;
            --t[i];
            ++t[j];
          } else {
            if (t[i] == 0 || j != (i + 1) % n) continue;
            --t[i];
          }
          ++steps;
          double v = violation(s, grid_double(s, t, D));
          if (v < cur) {
            k = std::move(t);
            cur = v;
            moved = true;
          }
        }
      if (!s.simplex && !moved)
        for (std::size_t i = 0; i < n && !moved; ++i) {
          if (k[i] == D) continue;
          std::vector<long> t = k;
          ++t[i];
          ++steps;
          double v = violation(s, grid_double(s, t, D));
          if (v < cur) {
            k = std::move(t);
            cur = v;
            moved = true;
          }
        }
    }
  }
  return std::nullopt;
}

namespace {

struct Residuals {
  const PolySystem& s;
  std::vector<std::vector<std::pair<Var, Poly>>> grad;
  double mu;

  Residuals(const PolySystem& sys, double margin) : s(sys), mu(margin) {
    for (const auto& r : s.rows) {
      std::vector<std::pair<Var, Poly>> g;
      for (Var v : r.p.vars()) g.emplace_back(v, r.p.derivative(v));
      grad.push_back(std::move(g));
    }
  }

  std::vector<double> to_x(const Eigen::VectorXd& y) const {
    std::size_t n = s.nvars();
    std::vector<double> x(n);
    if (s.simplex) {
      double S = y.squaredNorm();
      for (std::size_t i = 0; i < n; ++i) x[i] = y[static_cast<Eigen::Index>(i)] * y[static_cast<Eigen::Index>(i)] / S;
    } else if (!s.box.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        double yi = y[static_cast<Eigen::Index>(i)], t = yi * yi / (1 + yi * yi);
        double lo = s.box[i].first.get_d(), hi = s.box[i].second.get_d();
        x[i] = lo + (hi - lo) * t;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) x[i] = y[static_cast<Eigen::Index>(i)];
    }
    return x;
  }

  void eval(const Eigen::VectorXd& y, Eigen::VectorXd& r, Eigen::MatrixXd& J) const {
    std::size_t n = s.nvars(), m = s.rows.size();
    auto x = to_x(y);
    r.setZero(static_cast<Eigen::Index>(m));
    J.setZero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    double S = y.squaredNorm();
    for (std::size_t k = 0; k < m; ++k) {
      const auto& row = s.rows[k];
      double v = row.p.eval(x), scale = 1;
      switch (row.rel) {
        case RowRel::Eq: break;
        case RowRel::Geq:
          if (v >= 0) continue;
          break;
        case RowRel::Gt:
          if (v >= mu) continue;
          v -= mu;
          break;
        case RowRel::Neq:
          if (std::fabs(v) >= mu) continue;
          scale = v >= 0 ? 1 : -1;
          v = scale * v - mu;
          break;
      }
      r[static_cast<Eigen::Index>(k)] = v;
      std::vector<double> g(n, 0);
      for (const auto& [var, d] : grad[k]) g[var] = scale * d.eval(x);
      if (s.simplex) {
        double gx = 0;
        for (std::size_t i = 0; i < n; ++i) gx += g[i] * x[i];
        for (std::size_t j = 0; j < n; ++j)
          J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
              2 * y[static_cast<Eigen::Index>(j)] / S * (g[j] - gx);
      } else if (!s.box.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
          double yj = y[static_cast<Eigen::Index>(j)], den = 1 + yj * yj;
          double w = s.box[j].second.get_d() - s.box[j].first.get_d();
          J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = g[j] * w * 2 * yj / (den * den);
        }
      } else {
        for (std::size_t j = 0; j < n; ++j) J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = g[j];
      }
    }
  }
};

Eigen::VectorXd levenberg_marquardt(const Residuals& R, Eigen::VectorXd y, int iters) {
  Eigen::Index n = y.size();
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  R.eval(y, r, J);
  double cost = r.squaredNorm(), lambda = 1e-3;
  for (int it = 0; it < iters && cost > 1e-30; ++it) {
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * r;
    for (Eigen::Index i = 0; i < n; ++i) A(i, i) += lambda * (1 + A(i, i));
    Eigen::VectorXd step = A.ldlt().solve(-g);
    if (!step.allFinite()) break;
    Eigen::VectorXd y2 = y + step;
    Eigen::VectorXd r2;
    Eigen::MatrixXd J2;
    R.eval(y2, r2, J2);
    double c2 = r2.squaredNorm();
    if (std::isfinite(c2) && c2 < cost) {
      y = std::move(y2);
      r = std::move(r2);
      J = std::move(J2);
      cost = c2;
      lambda = std::max(lambda / 3, 1e-15);
    } else {
      lambda *= 4;
      if (lambda > 1e12) break;
    }
  }
  return y;
}

}  // namespace

std::optional<NumericPoint> numeric_search(const PolySystem& s, const PolyBudget& b,
                                           const std::vector<double>& seed_point) {
  std::size_t n = s.nvars();
  if (n == 0) return std::nullopt;
  double mu = std::max(100 * b.tolerance, 1e-7);
  Residuals R(s, mu);
  std::mt19937_64 rng(b.seed);
  std::normal_distribution<double> normal(0, 1);
  Deadline deadline(b.timeout_ms);
  for (int restart = 0; restart < b.restarts && !deadline.passed(); ++restart) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    if (restart == 0 && seed_point.size() == n) {
      for (std::size_t i = 0; i < n; ++i) {
        double v = std::isnan(seed_point[i]) ? 1.0 / static_cast<double>(n) : std::max(seed_point[i], 1e-6);
        if (s.simplex) y[static_cast<Eigen::Index>(i)] = std::sqrt(v);
        else if (!s.box.empty()) {
          double lo = s.box[i].first.get_d(), hi = s.box[i].second.get_d();
          double t = std::clamp((v - lo) / std::max(hi - lo, 1e-300), 1e-6, 1 - 1e-6);
          y[static_cast<Eigen::Index>(i)] = std::sqrt(t / (1 - t));
        } else {
          y[static_cast<Eigen::Index>(i)] = v;
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) y[static_cast<Eigen::Index>(i)] = normal(rng);
    }
    y = levenberg_marquardt(R, y, b.lm_iters);
    NumericPoint pt = measure_point(s, R.to_x(y));
    if (pt.residual <= b.tolerance && pt.margin >= b.tolerance) return pt;
  }
  return std::nullopt;
}

// ---- pipeline ----

const char* verdict_name(PolyVerdict::Kind k) {
  switch (k) {
    case PolyVerdict::Kind::SatRational: return "SAT";
    case PolyVerdict::Kind::SatNumeric: return "SAT (numeric)";
    case PolyVerdict::Kind::UnsatCertified: return "UNSAT";
    case PolyVerdict::Kind::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

std::optional<std::vector<Rational>> rationalize_point(const PolySystem& s, const std::vector<double>& x, long max_den) {
  for (long D : {max_den, 1000L, 1000000L}) {
    std::vector<Rational> q(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = rationalize(x[i], D);
    if (s.simplex && !q.empty()) {
      Rational rest = 1;
      for (std::size_t i = 0; i + 1 < q.size(); ++i) rest -= q[i];
      q.back() = rest;
    }
    if (system_holds(s, q)) return q;
  }
  return std::nullopt;
}

UnsatProof tree_proof(const PolySystem& s, const BpResult& r) {
  UnsatProof p;
  p.kind = UnsatProof::Kind::PruneTree;
  p.system = s;
  p.tree = r.tree;
  p.text = prune_tree_to_text(r.tree);
  return p;
}

// One system without != rows. `lifted` is the same system with product factors
// named, used by branch and prune.
SystemVerdict solve_branch(const PolySystem& s, const BpProblem& lifted, const PolyBudget& b) {
  SystemVerdict v;
  if (auto lin = to_linear(s)) {
    LinResult r = lin_sat(*lin);
    if (r.sat) {
      v.kind = PolyVerdict::Kind::SatRational;
      v.point = r.witness;
    } else {
      v.kind = PolyVerdict::Kind::UnsatCertified;
      UnsatProof p;
      p.kind = UnsatProof::Kind::Linear;
      p.system = s;
      p.text = trace_to_text(r, s.var_names);
      v.proofs.push_back(std::move(p));
    }
    return v;
  }
  if (auto q = rational_search(s, b)) {
    v.kind = PolyVerdict::Kind::SatRational;
    v.point = *q;
    return v;
  }
  auto numeric = numeric_search(s, b);
  if (numeric) {
    if (auto q = rationalize_point(s, numeric->x, b.max_denom)) {
      v.kind = PolyVerdict::Kind::SatRational;
      v.point = *q;
      return v;
    }
    PolyBudget quick = b;
    quick.bp_boxes = std::min<std::size_t>(b.bp_boxes, 64);
    BpResult bp;
    if (!lifted.names.empty()) bp = branch_and_prune(lifted, quick);
    if (bp.kind == BpResult::Kind::UnsatCertified) {
      v.kind = PolyVerdict::Kind::UnsatCertified;
      v.proofs.push_back(tree_proof(s, bp));
      return v;
    }
    v.kind = PolyVerdict::Kind::SatNumeric;
    v.numeric = *numeric;
    return v;
  }
  BpResult bp;
  if (!lifted.names.empty()) bp = branch_and_prune(lifted, b);
  if (bp.kind == BpResult::Kind::UnsatCertified) {
    v.kind = PolyVerdict::Kind::UnsatCertified;
    v.proofs.push_back(tree_proof(s, bp));
    return v;
  }
  if (bp.kind == BpResult::Kind::SatBoxHint) {
    std::vector<double> seed(bp.hint.begin(), bp.hint.begin() + static_cast<std::ptrdiff_t>(s.nvars()));
    if (auto pt = numeric_search(s, b, seed)) {
      if (auto q = rationalize_point(s, pt->x, b.max_denom)) {
        v.kind = PolyVerdict::Kind::SatRational;
        v.point = *q;
        return v;
      }
      v.kind = PolyVerdict::Kind::SatNumeric;
      v.numeric = *pt;
      return v;
    }
  }
  if (s.nvars() <= 3 && (s.simplex || s.box.size() == s.nvars())) {
    PsatzInput in = psatz_input(s);
    if (auto cert = psatz_search(in.F, in.G, in.H, b.psatz_degree)) {
      v.kind = PolyVerdict::Kind::UnsatCertified;
      UnsatProof p;
      p.kind = UnsatProof::Kind::Psatz;
      p.system = s;
      p.psatz = *cert;
      p.text = psatz_to_text(*cert, s.var_names);
      v.proofs.push_back(std::move(p));
      return v;
    }
  }
  v.kind = PolyVerdict::Kind::Unknown;
  std::ostringstream os;
  os << "rational grid up to denominator " << b.max_denom << " found nothing; numeric search failed after "
     << b.restarts << " restarts; branch and prune stopped after " << bp.boxes << " boxes (limit " << b.bp_boxes
     << ", depth " << b.bp_depth << ")";
  v.report = os.str();
  return v;
}

SystemVerdict combine(std::vector<SystemVerdict> parts) {
  SystemVerdict out;
  for (auto k : {PolyVerdict::Kind::SatRational, PolyVerdict::Kind::SatNumeric})
    for (auto& p : parts)
      if (p.kind == k) return std::move(p);
  bool all_unsat = true;
  for (auto& p : parts) {
    if (p.kind != PolyVerdict::Kind::UnsatCertified) {
      all_unsat = false;
      if (!p.report.empty()) out.report = p.report;
    }
    for (auto& pr : p.proofs) out.proofs.push_back(std::move(pr));
  }
  out.kind = all_unsat ? PolyVerdict::Kind::UnsatCertified : PolyVerdict::Kind::Unknown;
  if (!all_unsat) out.proofs.clear();
  return out;
}

// Splits every != row into its two strict halves, in lockstep for both views.
SystemVerdict solve_split(const PolySystem& s, const BpProblem& lifted, const PolyBudget& b) {
  std::vector<std::size_t> neq;
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    if (s.rows[i].rel == RowRel::Neq) neq.push_back(i);
  if (neq.empty()) return solve_branch(s, lifted, b);
  if (neq.size() > 10) {
    SystemVerdict v;
    v.report = "more than 10 disequalities";
    return v;
  }
  std::vector<SystemVerdict> parts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << neq.size()); ++mask) {
    PolySystem t = s;
    BpProblem l = lifted;
    for (std::size_t k = 0; k < neq.size(); ++k) {
      bool neg = (mask >> k) & 1u;
      auto& row = t.rows[neq[k]];
      auto& lrow = l.rows[neq[k]];
      row.rel = lrow.rel = RowRel::Gt;
      if (neg) {
        row.p = -row.p;
        lrow.p = -lrow.p;
      }
    }
    parts.push_back(solve_branch(t, l, b));
    if (parts.back().kind == PolyVerdict::Kind::SatRational) break;
  }
  return combine(std::move(parts));
}

// Names multi-state linear factors of products so that branch and prune splits
// over event probabilities instead of single states.
class Lifter {
 public:
  Lifter(const std::vector<std::string>& letters) : letters_(letters), nstates_(std::size_t{1} << letters.size()) {}

  PolyRow row(const Literal& l) {
    const Atom& a = l.atom;
    if (a.kind == Atom::Kind::Indep) {
      Poly ab = event_poly(BoolExpr::conj(a.events[0], a.events[1]), letters_);
      Poly prod = mul(event_poly(a.events[0], letters_), event_poly(a.events[1], letters_));
      return {ab - prod, l.positive ? RowRel::Eq : RowRel::Neq};
    }
    auto [ln, ld] = frac(a.lhs());
    auto [rn, rd] = frac(a.rhs());
    RowRel rel = a.rel == Rel::Geq ? RowRel::Geq : a.rel == Rel::Gt ? RowRel::Gt : RowRel::Eq;
    return {mul(ln, rd) - mul(rn, ld), rel};
  }

  BpProblem problem(std::vector<PolyRow> rows) const {
    BpProblem p;
    p.names = state_descriptions(letters_);
    p.simplex_vars = nstates_;
    for (std::size_t k = 0; k < defs_.size(); ++k) {
      p.names.push_back("s" + std::to_string(k));
      Rational lo = 0, hi = 0;
      bool all = defs_[k].size() == nstates_;
      bool first = true;
      for (const auto& [m, c] : defs_[k].terms()) {
        if (first && all) lo = hi = c;
        first = false;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      p.bounds.push_back({lo, hi});
      rows.push_back({Poly::var(static_cast<Var>(nstates_ + k)) - defs_[k], RowRel::Eq});
    }
    p.rows = std::move(rows);
    return p;
  }

 private:
  Poly factor(const Poly& p) {
    if (p.degree() != 1 || p.size() < 2 || p.constant() != 0) return p;
    auto it = aux_.find(p.terms());
    if (it != aux_.end()) return Poly::var(it->second);
    Var v = static_cast<Var>(nstates_ + defs_.size());
    aux_.emplace(p.terms(), v);
    defs_.push_back(p);
    return Poly::var(v);
  }

  Poly mul(const Poly& a, const Poly& b) {
    if (a.is_constant() || b.is_constant()) return a * b;
    return factor(a) * factor(b);
  }

  std::pair<Poly, Poly> frac(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Basic: return {event_poly(t.event(), letters_), Poly(1)};
      case Term::Kind::Cond:
        return {event_poly(BoolExpr::conj(t.event(), t.given()), letters_), event_poly(t.given(), letters_)};
      case Term::Kind::Sum: {
        auto [an, ad] = frac(t.lhs());
        auto [bn, bd] = frac(t.rhs());
        if (ad == Poly(1) && bd == Poly(1)) return {an + bn, Poly(1)};
        return {mul(an, bd) + mul(bn, ad), mul(ad, bd)};
      }
      case Term::Kind::Prod: {
        auto [an, ad] = frac(t.lhs());
        auto [bn, bd] = frac(t.rhs());
        return {mul(an, bn), mul(ad, bd)};
      }
    }
    return {Poly(), Poly(1)};
  }

  std::vector<std::string> letters_;
  std::size_t nstates_;
  std::map<std::map<Monomial, Rational>, Var> aux_;
  std::vector<Poly> defs_;
};

}  // namespace

namespace {

// Rounds a numeric point over the kept states and projects it exactly onto
// the linear rows the presolve left behind, so the eliminated letters can be
// restored by extend_model. Inequalities that end up violated join the
// equalities as tight rows.
std::optional<std::vector<Rational>> polish_linear(const Presolved& pre, const std::vector<double>& x, long max_den) {
  const std::size_t n = x.size();
  struct Lin {
    std::vector<Rational> a;
    RowRel rel;
  };
  std::vector<Lin> rows;
  rows.push_back({std::vector<Rational>(n, 1), RowRel::Eq});
  for (const auto& r : pre.local) {
    std::vector<Rational> a(n, 0);
    for (StateIndex st = 0; st < n; ++st) {
      StateIndex sub = 0;
      for (std::size_t j = 0; j < r.letters.size(); ++j) {
        auto pos = static_cast<std::size_t>(std::find(pre.kept.begin(), pre.kept.end(), r.letters[j]) - pre.kept.begin());
        if (pos == pre.kept.size()) return std::nullopt;
        if (!letter_true(st, pos)) sub |= StateIndex{1} << j;
      }
      auto it = r.coeffs.find(sub);
      if (it != r.coeffs.end()) a[st] = it->second;
    }
    rows.push_back({a, r.rel});
  }
  std::vector<Rational> w0(n);
  for (std::size_t i = 0; i < n; ++i) w0[i] = x[i] <= 0 ? Rational(0) : rationalize(x[i], max_den);
  std::vector<std::vector<Rational>> tight;
  std::vector<Rational> rhs;
  for (const auto& r : rows)
    if (r.rel == RowRel::Eq) tight.push_back(r.a);
  rhs.assign(tight.size(), 0);
  rhs[0] = 1;
  for (int round = 0; round < 12; ++round) {
    // Independent subset of the tight rows.
    std::vector<std::vector<Rational>> basis, keep;
    std::vector<Rational> keep_rhs, basis_rhs;
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < tight.size(); ++i) {
      auto v = tight[i];
      Rational b = rhs[i];
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (v[piv[k]] == 0) continue;
        Rational f = v[piv[k]] / basis[k][piv[k]];
        for (std::size_t j = 0; j < n; ++j) v[j] -= f * basis[k][j];
        b -= f * basis_rhs[k];
      }
      std::size_t p = 0;
      while (p < n && v[p] == 0) ++p;
      if (p == n) {
        if (b != 0) return std::nullopt;
        continue;
      }
      basis.push_back(v);
      basis_rhs.push_back(b);
      piv.push_back(p);
      keep.push_back(tight[i]);
      keep_rhs.push_back(rhs[i]);
    }
    // w = w0 - A^T (A A^T)^{-1} (A w0 - b)
    const std::size_t m = keep.size();
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m + 1, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k) g[i][j] += keep[i][k] * keep[j][k];
      Rational r = -keep_rhs[i];
      for (std::size_t k = 0; k < n; ++k) r += keep[i][k] * w0[k];
      g[i][m] = r;
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t p = c;
      while (p < m && g[p][c] == 0) ++p;
      if (p == m) return std::nullopt;
      std::swap(g[p], g[c]);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == c || g[i][c] == 0) continue;
        Rational f = g[i][c] / g[c][c];
        for (std::size_t j = c; j <= m; ++j) g[i][j] -= f * g[c][j];
      }
    }
    std::vector<Rational> w = w0;
    for (std::size_t i = 0; i < m; ++i) {
      Rational lam = g[i][m] / g[i][i];
      for (std::size_t k = 0; k < n; ++k) w[k] -= lam * keep[i][k];
    }
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (w[k] < 0) {
        std::vector<Rational> e(n, 0);
        e[k] = 1;
        tight.push_back(e);
        rhs.push_back(0);
        ok = false;
      }
    }
    for (const auto& r : rows) {
      if (r.rel == RowRel::Eq) continue;
      Rational v = 0;
      for (std::size_t k = 0; k < n; ++k) v += r.a[k] * w[k];
      if ((r.rel == RowRel::Geq && v < 0) || (r.rel == RowRel::Neq && v == 0)) {
        if (r.rel == RowRel::Neq) return std::nullopt;
        tight.push_back(r.a);
        rhs.push_back(0);
        ok = false;
      } else if (r.rel == RowRel::Gt && v <= 0) {
        return std::nullopt;
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

}  // namespace

SystemVerdict solve_system(const PolySystem& s, const PolyBudget& b) {
  BpProblem lifted;
  if (s.simplex || s.box.size() == s.nvars()) lifted = bp_problem(s);
  return solve_split(s, lifted, b);
}

PolyVerdict sat_multiplicative(const Formula& f, const PolyBudget& b) {
  auto letters = free_letters(f);
  auto disjuncts = dnf(f);
  PolyVerdict out;
  std::vector<PolyVerdict> numeric;
  bool all_unsat = true;
  std::string report;
  for (std::size_t d = 0; d < disjuncts.size(); ++d) {
    Presolved pre = presolve(disjuncts[d], letters);
    if (pre.contradiction) {
      UnsatProof p;
      p.kind = UnsatProof::Kind::Linear;
      p.text = "linear constraints of disjunct " + std::to_string(d) + " project to a false ground row\n";
      out.proofs.push_back(std::move(p));
      continue;
    }
    PolySystem sys = residual_system(pre);
    Lifter lifter(pre.kept);
    std::vector<PolyRow> lrows;
    for (const auto& l : pre.residual) lrows.push_back(lifter.row(l));
    for (std::size_t i = pre.residual.size(); i < sys.rows.size(); ++i) lrows.push_back(sys.rows[i]);
    BpProblem lifted = lifter.problem(std::move(lrows));
    SystemVerdict v = solve_split(sys, lifted, b);
    switch (v.kind) {
      case PolyVerdict::Kind::SatRational: {
        Model small = model_from_vector(pre.kept, v.point);
        auto full = extend_model(pre, small, letters);
        if (!full || !satisfies(*full, f)) throw std::logic_error("rational witness failed exact verification");
        PolyVerdict res;
        res.kind = PolyVerdict::Kind::SatRational;
        res.model = std::move(*full);
        res.disjunct = d;
        return res;
      }
      case PolyVerdict::Kind::SatNumeric: {
        PolyVerdict res;
        res.kind = PolyVerdict::Kind::SatNumeric;
        res.letters = pre.kept;
        res.numeric = v.numeric.x;
        if (!pre.gadgets.empty() && letters.size() <= 20) {
          // The finest rounding that extends supplies the numeric model.
          for (long den : {64L, 4096L, 1000000L, 1000000000000L}) {
            auto w = polish_linear(pre, v.numeric.x, den);
            if (!w) continue;
            auto full = extend_model(pre, model_from_vector(pre.kept, *w), letters);
            if (!full) continue;
            if (satisfies(*full, f)) {
              PolyVerdict exact;
              exact.kind = PolyVerdict::Kind::SatRational;
              exact.model = std::move(*full);
              exact.disjunct = d;
              return exact;
            }
            res.letters = letters;
            res.numeric.assign(std::size_t{1} << letters.size(), 0.0);
            for (const auto& [st, w] : full->weights) res.numeric[st] = w.get_d();
          }
        }
        res.residual = v.numeric.residual;
        res.margin = v.numeric.margin;
        res.disjunct = d;
        numeric.push_back(std::move(res));
        all_unsat = false;
        break;
      }
      case PolyVerdict::Kind::UnsatCertified:
        for (auto& p : v.proofs) out.proofs.push_back(std::move(p));
        break;
      case PolyVerdict::Kind::Unknown:
        all_unsat = false;
        report = "disjunct " + std::to_string(d) + ": " + v.report;
        break;
    }
  }
  if (!numeric.empty()) return numeric.front();
  if (all_unsat) {
    out.kind = PolyVerdict::Kind::UnsatCertified;
    return out;
  }
  PolyVerdict unk;
  unk.kind = PolyVerdict::Kind::Unknown;
  unk.report = report;
  return unk;
}

double numeric_prob(const PolyVerdict& v, const BoolExpr& e) {
  if (v.kind == PolyVerdict::Kind::SatRational) return prob(v.model, e).get_d();
  if (v.kind != PolyVerdict::Kind::SatNumeric) throw std::invalid_argument("verdict carries no model");
  LetterIndex li(v.letters);
  for (const auto& l : free_letters(e))
    if (!li.contains(l)) throw UnknownLetter("letter " + l + " was projected out of the numeric model");
  double p = 0;
  for (StateIndex s = 0; s < v.numeric.size(); ++s)
    if (holds(e, s, li)) p += v.numeric[s];
  return p;
}


PolyVerdict decide(const Formula& f, const PolyBudget& b) {
  if (!generable(f, Lang::Add) && !generable(f, Lang::SameCond)) return sat_multiplicative(f, b);
  AdditiveResult r = sat_additive(f);
  PolyVerdict out;
  if (r.sat) {
    out.kind = PolyVerdict::Kind::SatRational;
    out.model = std::move(r.model);
    out.disjunct = r.disjunct;
    return out;
  }
  out.kind = PolyVerdict::Kind::UnsatCertified;
  auto names = state_descriptions(free_letters(f));
  for (const auto& ref : r.refutations) {
    UnsatProof p;
    p.kind = UnsatProof::Kind::Linear;
    p.text = trace_to_text(ref, names);
    out.proofs.push_back(std::move(p));
  }
  return out;
}

}  // namespace probcalc
