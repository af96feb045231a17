// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "probcalc/axioms.hpp"
#include "probcalc/expressivity.hpp"
#include "probcalc/io.hpp"
#include "probcalc/linsolve.hpp"
#include "probcalc/polysolve.hpp"
#include "probcalc/rational.hpp"
#include "probcalc/reductions.hpp"
#include "probcalc/represent.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace probcalc;

namespace {

const std::string kFixtures = PROBCALC_FIXTURES;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Formula formula_file(const std::string& path) {
  std::string text, line;
  std::istringstream in(read_file(path));
  while (std::getline(in, line))
    if (line.rfind("#", 0) != 0) text += line + "\n";
  return parse_formula(text);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome within(Outcome o, double secs, double limit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " (%.2f s, limit %.0f s)", secs, limit);
  o.detail += buf;
  if (secs > limit) o.pass = false;
  return o;
}

// 1
Outcome expressivity_blocks() {
  HierarchyReport r = hierarchy_report();
  std::size_t bad = 0;
  for (const auto& row : r.rows) bad += !row.ok();
  return {r.all_ok(), std::to_string(r.rows.size()) + " verdicts, " + std::to_string(bad) + " mismatches"};
}

// 2
Outcome irrational_forcing() {
  Formula f = formula_file(kFixtures + "/intro.pl");
  PolyVerdict v = decide(f);
  if (v.kind != PolyVerdict::Kind::SatNumeric) return {false, std::string("verdict ") + verdict_name(v.kind)};
  double p = numeric_prob(v, BoolExpr::letter("B"));
  double err = std::abs(p - std::sqrt(0.5));
  char buf[128];
  std::snprintf(buf, sizeof buf, "P(B) = %.9f, |err| = %.2e, residual %.2e", p, err, v.residual);
  return {err <= 1e-6 && v.residual <= 1e-9, buf};
}

std::vector<Formula>& additive_corpus() {
  static std::vector<Formula> c = gen::additive_corpus(1000, 20240611);
  return c;
}

// 3
Outcome additive_correctness() {
  std::size_t agree = 0, sat = 0, witness_ok = 0;
  for (const auto& f : additive_corpus()) {
    AdditiveResult r = sat_additive(f);
    auto o = oracle::additive_sat(f);
    if (r.sat == o.has_value()) ++agree;
    if (r.sat) {
      ++sat;
      witness_ok += satisfies(r.model, f);
    }
  }
  std::size_t n = additive_corpus().size();
  return {agree == n && witness_ok == sat,
          std::to_string(agree) + "/" + std::to_string(n) + " agree with the vertex oracle, " + std::to_string(witness_ok) +
              "/" + std::to_string(sat) + " witnesses verified"};
}

// 4
Outcome small_model_bound() {
  std::size_t sat = 0, ok = 0, worst_slack = 0;
  for (const auto& f : additive_corpus()) {
    AdditiveResult r = sat_additive(f);
    if (!r.sat) continue;
    ++sat;
    Model m = minimize_support(f, r.model);
    bool good = satisfies(m, f) && m.support_size() <= r.disjunct_atoms + 1;
    ok += good;
    if (good) worst_slack = std::max(worst_slack, m.support_size());
  }
  return {ok == sat, std::to_string(ok) + "/" + std::to_string(sat) + " minimized witnesses within atoms + 1 (largest support " +
                         std::to_string(worst_slack) + ")"};
}

// 5
Outcome axiom_soundness() {
  std::size_t schemas = 0, hits = 0, lemma_valid = 0, lemma_total = 0;
  std::string first;
  for (const auto& s : schema_table()) {
    ++schemas;
    auto h1 = exhaustive_check(s, 100, 11, {"A", "B"}, 6);
    auto h2 = soundness_fuzz(s, 10000, 12);
    if (h1 || h2) {
      ++hits;
      if (first.empty()) first = " first hit in " + s.name;
    }
    if (s.group == "lemma") {
      std::mt19937_64 rng(13);
      for (int i = 0; i < 5; ++i) {
        ++lemma_total;
        Formula inst = instantiate(s, random_args(s, {"A", "B"}, rng));
        lemma_valid += validity(inst).kind == Validity::Kind::Valid;
      }
    }
  }
  return {hits == 0 && lemma_valid == lemma_total,
          std::to_string(schemas) + " schemas, " + std::to_string(hits) + " with countermodels, lemma instances certified " +
              std::to_string(lemma_valid) + "/" + std::to_string(lemma_total) + first};
}

// 6
Outcome representability() {
  CompOrder o5 = order_from_json(read_file(kFixtures + "/order5.json"));
  bool axioms_ok = all_pass(check_definetti_axioms(o5));
  RepresentResult r5 = representable(o5);
  bool cert_ok = !r5.yes && oracle::balanced_and_directed(r5.certificate, o5) && verify_certificate(r5.certificate, o5);
  std::size_t reps = 0, reps_ok = 0;
  for (const char* name : {"/order_two_thirds.json", "/order_three.json"}) {
    CompOrder o = order_from_json(read_file(kFixtures + name));
    RepresentResult r = representable(o);
    ++reps;
    reps_ok += r.yes && oracle::measure_matches(o, r.measure);
  }
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> w;
    int atoms = 2 + i % 3;
    for (int a = 0; a < atoms; ++a) w.push_back(Rational(static_cast<long>(1 + rng() % 7)));
    Rational tot = 0;
    for (auto& x : w) tot += x;
    for (auto& x : w) x /= tot;
    CompOrder o = CompOrder::from_measure(w);
    RepresentResult r = representable(o);
    ++reps;
    reps_ok += r.yes && oracle::measure_matches(o, r.measure);
  }
  return {axioms_ok && cert_ok && reps_ok == reps,
          std::string("5-atom order: quasi-additive ") + (axioms_ok ? "yes" : "no") + ", certificate " +
              (cert_ok ? "checked" : "REJECTED") + "; representable fixtures " + std::to_string(reps_ok) + "/" +
              std::to_string(reps)};
}

// 7
Outcome quad_classification() {
  // Classes: 0 = pairs containing the empty event, 1..6 = unordered pairs of
  // nonempty events over two atoms.
  auto cls = [](Subset a, Subset b) -> int {
    if (!a || !b) return 0;
    if (a > b) std::swap(a, b);
    static const int table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 4}, {0, 2, 3, 5}, {0, 4, 5, 6}};
    return table[a][b];
  };
  std::size_t total = 0, passing = 0, mismatches = 0;
  std::set<std::size_t> regions;
  std::vector<int> rank(7);
  // Every surjection onto 0..k-1 is one total preorder.
  std::function<void(int, int)> rec = [&](int i, int used_max) {
    if (i == 7) {
      std::vector<bool> hit(static_cast<std::size_t>(used_max + 1), false);
      for (int r : rank) hit[static_cast<std::size_t>(r)] = true;
      for (bool h : hit)
        if (!h) return;
      ++total;
      QuadOrder q;
      q.atoms = 2;
      std::vector<int> v(16);
      for (Subset a = 0; a < 4; ++a)
        for (Subset b = 0; b < 4; ++b) v[q.item(a, b)] = rank[static_cast<std::size_t>(cls(a, b))];
      q.rel = Preorder::from_values(v);
      bool pass = all_pass(quad_check_axioms(q, 2, 3, true));
      QuadN2Result rep = quad_representable_n2(q);
      passing += pass;
      if (pass != rep.yes) ++mismatches;
      if (rep.yes) regions.insert(rep.region);
      return;
    }
    for (int r = 0; r < 7; ++r) {
      rank[static_cast<std::size_t>(i)] = r;
      rec(i + 1, std::max(used_max, r));
    }
  };
  rec(0, -1);
  auto sweep = quad_sweep_n2(3);
  QuadOrder phi = quad_order_from_json(read_file(kFixtures + "/m_phi.json"));
  QuadOrder psi = quad_order_from_json(read_file(kFixtures + "/m_psi.json"));
  std::size_t rk_phi = matrix_from_json(read_file(kFixtures + "/m_phi.json")).rank();
  std::size_t rk_psi = matrix_from_json(read_file(kFixtures + "/m_psi.json")).rank();
  bool matrices = phi.rel == psi.rel && rk_phi == 1 && rk_psi == 2;
  return {passing == 9 && mismatches == 0 && sweep.size() == 9 && regions.size() == 9 && matrices,
          std::to_string(total) + " preorders, " + std::to_string(passing) + " pass the axioms, " +
              std::to_string(mismatches) + " disagree with the classifier, sweep " + std::to_string(sweep.size()) +
              "; M_phi/M_psi same order " + (phi.rel == psi.rel ? "yes" : "no") + ", ranks " + std::to_string(rk_phi) +
              "/" + std::to_string(rk_psi)};
}

bool is_sat(PolyVerdict::Kind k) { return k == PolyVerdict::Kind::SatRational || k == PolyVerdict::Kind::SatNumeric; }

// 8
Outcome reduction_round_trips() {
  std::size_t sc_ok = 0, sc_total = 0;
  for (const auto& f : gen::same_cond_corpus(100, 808)) {
    ++sc_total;
    Formula g = same_cond_to_comp(f);
    PolyVerdict a = decide(f), b = decide(g);
    if (a.kind == PolyVerdict::Kind::Unknown || b.kind == PolyVerdict::Kind::Unknown) continue;
    if (is_sat(a.kind) != is_sat(b.kind)) continue;
    bool ok = true;
    if (a.kind == PolyVerdict::Kind::SatRational) ok &= satisfies(a.model, g);
    if (b.kind == PolyVerdict::Kind::SatRational) ok &= satisfies(b.model, f);
    sc_ok += ok;
  }
  std::size_t etr_ok = 0, etr_total = 0;
  std::string etr_fail;
  PolyBudget budget;
  budget.timeout_ms = 20000;
  for (int i = 0; i < 100; ++i) {
    ++etr_total;
    int n = 1 + i % 2;
    EtrInstance inst = random_etr(n, 1 + (i / 2) % 3, i % 4 < 2, static_cast<std::uint64_t>(900 + i));
    IndEncoding enc = etr_inverse_to_ind(inst.system);
    SystemVerdict ev = solve_system(etr_to_poly(inst.system), budget);
    PolyVerdict iv = sat_multiplicative(enc.formula, budget);
    bool ok = ev.kind != PolyVerdict::Kind::Unknown && iv.kind != PolyVerdict::Kind::Unknown && is_sat(ev.kind) == is_sat(iv.kind);
    if (ok && ev.kind == PolyVerdict::Kind::SatRational)
      ok &= satisfies(transport_forward(enc, ev.point), enc.formula);
    if (ok && !inst.planted.empty()) ok &= satisfies(transport_forward(enc, inst.planted), enc.formula);
    if (ok && iv.kind == PolyVerdict::Kind::SatRational) ok &= etr_holds(inst.system, transport_backward(enc, iv.model));
    if (ok && iv.kind == PolyVerdict::Kind::SatNumeric) {
      std::vector<double> x;
      for (const auto& d : enc.delta) x.push_back(2.0 * n * numeric_prob(iv, BoolExpr::letter(d)));
      ok &= etr_residual(inst.system, x) <= 1e-6;
    }
    etr_ok += ok;
    if (!ok && etr_fail.empty()) etr_fail = " first failure at instance " + std::to_string(i);
  }
  // x1 * x1 = 1 with n = 2: constant 1/(4n^2) = 1/16, witness P(d) = 1/4.
  EtrSystem sq = parse_etr(read_file(kFixtures + "/square.etr"));
  IndEncoding enc = etr_inverse_to_ind(sq);
  Model m = transport_forward(enc, {Rational(1), Rational(1)});
  bool constant = enc.constant.cells == 16 && prob(m, BoolExpr::letter("kappa")) == Rational(1, 16) &&
                  prob(m, BoolExpr::conj(BoolExpr::letter("d1"), BoolExpr::letter(enc.pairs.at(0).copy))) == Rational(1, 16);
  bool witness = satisfies(m, enc.formula) && prob(m, BoolExpr::letter("d1")) == Rational(1, 4) &&
                 prob(m, BoolExpr::letter("d2")) == Rational(1, 4);
  return {sc_ok == sc_total && etr_ok == etr_total && constant && witness,
          "same_cond " + std::to_string(sc_ok) + "/" + std::to_string(sc_total) + ", inverse ETR " + std::to_string(etr_ok) +
              "/" + std::to_string(etr_total) + etr_fail + ", 1/16 constant " + (constant ? "yes" : "no") +
              ", P(d)=1/4 witness " + (witness ? "yes" : "no")};
}

// 9
Outcome positivstellensatz() {
  // G = {x, -x - 1}: x + (-x - 1) + 1 = 0.
  std::vector<Poly> F, G{Poly::var(0), -Poly::var(0) - Poly(1)}, H;
  PsatzCertificate farkas;
  farkas.cone = {{Rational(1), {0}, Poly(1)}, {Rational(1), {1}, Poly(1)}};
  farkas.n = 0;
  farkas.d = 1;
  bool farkas_ok = psatz_verify(farkas, F, G, H);

  PolySystem sq;
  sq.var_names = {"x", "y"};
  sq.simplex = true;
  sq.rows.push_back({Poly::var(0) * Poly::var(0) - Poly::var(0), RowRel::Gt});
  PsatzInput in = psatz_input(sq);
  auto found = psatz_search(in.F, in.G, in.H, 3);
  bool found_ok = found && psatz_verify(*found, in.F, in.G, in.H);

  std::mt19937_64 rng(99);
  std::size_t rejected = 0;
  for (int i = 0; i < 100; ++i) {
    bool use_found = found && i % 2 == 0;
    PsatzCertificate c = use_found ? *found : farkas;
    const auto& g = use_found ? in.G : G;
    const auto& h = use_found ? in.H : H;
    const auto& f = use_found ? in.F : F;
    Rational delta(static_cast<long>(1 + rng() % 5), static_cast<long>(1 + rng() % 4));
    delta.canonicalize();
    std::size_t slots = c.cone.size() + c.ideal.size() + 1;
    std::size_t k = static_cast<std::size_t>(rng() % slots);
    if (k < c.cone.size()) {
      c.cone[k].coeff += delta;
    } else if (k < c.cone.size() + c.ideal.size()) {
      c.ideal[k - c.cone.size()].multiplier += Poly(delta);
    } else {
      c.d += 1;
    }
    rejected += !psatz_verify(c, f, g, h);
  }
  return {farkas_ok && found_ok && rejected == 100,
          std::string("Farkas fixture ") + (farkas_ok ? "accepted" : "REJECTED") + ", x^2 > x certificate " +
              (found_ok ? "found and verified" : "missing") + ", corruptions rejected " + std::to_string(rejected) + "/100"};
}

// 10
Outcome counting_semantics() {
  std::size_t ok = 0, total = 0;
  for (const auto& f : gen::satisfiable_additive(500, 1010)) {
    ++total;
    AdditiveResult r = sat_additive(f);
    if (!r.sat) continue;
    std::vector<Rational> w;
    for (const auto& [s, x] : r.model.weights) w.push_back(x);
    Integer l = lcm_of_denominators(w);
    Model c = r.model;
    c.mode = Mode::Count;
    for (auto& [s, x] : c.weights) x *= l;
    ok += eval_counting(c, f);
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " scaled witnesses satisfy the counting semantics"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs{
      {1, "expressivity fixtures", 10, expressivity_blocks},
      {2, "irrational forcing", 5, irrational_forcing},
      {3, "additive decision vs vertex oracle", 60, additive_correctness},
      {4, "small-model bound", 60, small_model_bound},
      {5, "axiom soundness", 120, axiom_soundness},
      {6, "representability certificates", 60, representability},
      {7, "two-atom quadratic classification", 600, quad_classification},
      {8, "reduction round trips", 300, reduction_round_trips},
      {9, "Positivstellensatz certificates", 60, positivstellensatz},
      {10, "counting semantics", 30, counting_semantics},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    o = within(o, seconds_since(t0), c.limit);
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(cs.size()) - failed, cs.size());
  return failed == 0 ? 0 : 1;
}
