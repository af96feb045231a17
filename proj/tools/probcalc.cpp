// probcalc: command-line front end.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "probcalc/axioms.hpp"
#include "probcalc/bench.hpp"
#include "probcalc/expressivity.hpp"
#include "probcalc/io.hpp"
#include "probcalc/polysolve.hpp"
#include "probcalc/rational.hpp"
#include "probcalc/reductions.hpp"
#include "probcalc/represent.hpp"

using namespace probcalc;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "probcalc/1";

enum Exit { kAnswered = 0, kError = 1, kUnknown = 2 };

struct Options {
  std::string format = "text";
  std::string expr;
  std::string file;
  std::string lang;
  long max_denom = 64;
  int bp_depth = 40;
  int psatz_degree = 3;
  int fincan_bound = 3;
  long timeout_ms = 0;
  std::uint64_t seed = 1;
  // subcommand-specific
  std::string model1, model2, out_dir, mode;
  unsigned threads = 1;
  bool sweep = false;
};

bool json_out(const Options& o) { return o.format == "json"; }

PolyBudget budget(const Options& o) {
  PolyBudget b;
  b.max_denom = o.max_denom;
  b.bp_depth = o.bp_depth;
  b.psatz_degree = o.psatz_degree;
  b.timeout_ms = o.timeout_ms;
  b.seed = o.seed;
  return b;
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    out += line + "\n";
  }
  return out;
}

std::string input_text(const Options& o) {
  if (!o.expr.empty() && !o.file.empty()) throw CLI::ValidationError("give either -e or -f, not both");
  if (!o.expr.empty()) return o.expr;
  if (!o.file.empty()) return read_file(o.file);
  throw CLI::ValidationError("missing input: use -e EXPR or -f FILE");
}

Formula input_formula(const Options& o) {
  Formula f = parse_formula(strip_comments(input_text(o)));
  if (!o.lang.empty()) {
    Lang want = lang_from_name(o.lang);
    Lang got = classify(f);
    if (!lang_leq(got, want))
      throw std::invalid_argument(std::string("formula is in ") + lang_name(got) + ", outside --lang " + o.lang);
  }
  return f;
}

json model_json(const Model& m) { return json::parse(model_to_json(m)); }

void print(const Options& o, const json& j, const std::string& text) {
  if (json_out(o)) {
    json out = j;
    out["schema"] = kSchema;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string weights_text(const Model& m) {
  std::string s;
  for (const auto& [st, w] : m.weights)
    if (w != 0) s += "  " + state_name(st, m.letters) + " = " + to_string(w) + "\n";
  return s;
}

// ---- subcommands ----

int cmd_parse(const Options& o) {
  Formula f = input_formula(o);
  json j{{"command", "parse"}, {"formula", render(f)}, {"lang", lang_name(classify(f))},
         {"letters", free_letters(f)}, {"atoms", atom_count(f)}};
  print(o, j, render(f) + "\n");
  return kAnswered;
}

int cmd_classify(const Options& o) {
  Formula f = input_formula(o);
  print(o, {{"command", "classify"}, {"lang", lang_name(classify(f))}}, lang_name(classify(f)));
  return kAnswered;
}

json proofs_json(const std::vector<UnsatProof>& ps) {
  json a = json::array();
  for (const auto& p : ps) {
    const char* kind = p.kind == UnsatProof::Kind::Linear ? "linear" : p.kind == UnsatProof::Kind::Psatz ? "psatz" : "prune_tree";
    a.push_back({{"kind", kind}, {"certificate", p.text}});
  }
  return a;
}

int report_verdict(const Options& o, const std::string& command, const PolyVerdict& v) {
  json j{{"command", command}, {"verdict", verdict_name(v.kind)}};
  std::string text = verdict_name(v.kind);
  switch (v.kind) {
    case PolyVerdict::Kind::SatRational:
      j["model"] = model_json(v.model);
      text += "\n" + weights_text(v.model);
      break;
    case PolyVerdict::Kind::SatNumeric: {
      json probs = json::object();
      for (const auto& l : v.letters) {
        double p = numeric_prob(v, BoolExpr::letter(l));
        probs[l] = p;
        text += " P(" + l + ") ≈ " + fmt6(p);
      }
      j["letters"] = v.letters;
      j["weights"] = v.numeric;
      j["marginals"] = probs;
      j["residual"] = v.residual;
      text += "\n";
      for (std::size_t s = 0; s < v.numeric.size(); ++s)
        text += "  " + state_name(s, v.letters) + " ≈ " + fmt6(v.numeric[s]) + "\n";
      char buf[64];
      std::snprintf(buf, sizeof buf, "  residual %.3g", v.residual);
      text += buf;
      break;
    }
    case PolyVerdict::Kind::UnsatCertified:
      j["proofs"] = proofs_json(v.proofs);
      break;
    case PolyVerdict::Kind::Unknown:
      j["report"] = v.report;
      text += "\n" + v.report;
      break;
  }
  print(o, j, text);
  return v.kind == PolyVerdict::Kind::Unknown ? kUnknown : kAnswered;
}

int cmd_sat(const Options& o) { return report_verdict(o, "sat", decide(input_formula(o), budget(o))); }

int cmd_valid(const Options& o) {
  Formula f = input_formula(o);
  Validity v = validity(f, budget(o));
  json j{{"command", "valid"}, {"verdict", validity_name(v.kind)}};
  std::string text;
  switch (v.kind) {
    case Validity::Kind::Valid:
      text = "VALID";
      j["proofs"] = proofs_json(v.verdict.proofs);
      break;
    case Validity::Kind::Countermodel:
      text = "NOT VALID";
      if (v.verdict.kind == PolyVerdict::Kind::SatRational) {
        j["countermodel"] = model_json(v.countermodel);
        text += "\ncountermodel:\n" + weights_text(v.countermodel);
      } else {
        j["countermodel_numeric"] = v.verdict.numeric;
        text += " (numeric countermodel)";
      }
      break;
    case Validity::Kind::Unknown:
      text = "UNKNOWN\n" + v.verdict.report;
      j["report"] = v.verdict.report;
      break;
  }
  print(o, j, text);
  return v.kind == Validity::Kind::Unknown ? kUnknown : kAnswered;
}

int cmd_model(const Options& o) {
  if (o.model1.empty()) throw CLI::ValidationError("model needs -m MODEL.json");
  Model m = model_from_json(read_file(o.model1));
  Formula f = input_formula(o);
  bool ok = satisfies(m, f);
  json atoms = json::array();
  std::string text = ok ? "TRUE\n" : "FALSE\n";
  for (const auto& a : atoms_of(f)) {
    bool h = satisfies(m, a);
    atoms.push_back({{"atom", render(a)}, {"holds", h}});
    text += std::string(h ? "  true   " : "  false  ") + render(a) + "\n";
  }
  json j{{"command", "model"}, {"holds", ok}, {"atoms", atoms}};
  if (m.mode == Mode::Count) j["counting"] = eval_counting(m, f);
  print(o, j, text);
  return kAnswered;
}

int cmd_distinguish(const Options& o) {
  if (o.model1.empty() || o.model2.empty()) throw CLI::ValidationError("distinguish needs --m1 and --m2");
  Model a = model_from_json(read_file(o.model1));
  Model b = model_from_json(read_file(o.model2));
  Lang lang = o.lang.empty() ? Lang::Poly : lang_from_name(o.lang);
  DistinguishResult r = distinguish(a, b, lang);
  json j{{"command", "distinguish"}, {"lang", lang_name(lang)}, {"atoms_checked", r.atoms_checked}};
  std::string text;
  if (r.witness) {
    j["distinguishable"] = true;
    j["witness"] = render(*r.witness);
    text = "DISTINGUISHABLE\n  " + render(*r.witness);
  } else {
    j["distinguishable"] = r.exhaustive ? json(false) : json(nullptr);
    j["exhaustive"] = r.exhaustive;
    text = r.exhaustive ? "INDISTINGUISHABLE (exhaustive)" : "UNKNOWN (atom budget exhausted)";
  }
  print(o, j, text);
  return r.witness || r.exhaustive ? kAnswered : kUnknown;
}

json report_json(const AxiomReport& r) {
  json a = json::array();
  for (const auto& c : r) a.push_back({{"axiom", c.name}, {"ok", c.ok}, {"witness", c.witness}});
  return a;
}

std::string report_text(const AxiomReport& r) {
  std::string s;
  for (const auto& c : r) s += "  " + c.name + (c.ok ? ": ok\n" : ": fails " + c.witness + "\n");
  return s;
}

json certificate_json(const BalancedCertificate& c) {
  json e = json::array();
  for (const auto& x : c.entries)
    e.push_back({{"a", subset_to_text(x.a)}, {"b", subset_to_text(x.b)}, {"mult", x.mult.get_str()},
                 {"strict", x.strict}, {"axiom", x.axiom}});
  const char* kind = c.kind == BalancedCertificate::Kind::Balanced ? "balanced"
                     : c.kind == BalancedCertificate::Kind::NonDeg ? "nondeg" : "nontriv";
  return {{"kind", kind}, {"entries", e}};
}

int cmd_represent(const Options& o) {
  CompOrder ord = order_from_json(input_text(o));
  bool total = ord.rel.total() && ord.rel.transitive();
  AxiomReport ax = total ? check_definetti_axioms(ord) : AxiomReport{};
  RepresentResult r = representable(ord, !total);
  json j{{"command", "represent"}, {"atoms", ord.atoms}, {"total", total}, {"axioms", report_json(ax)},
         {"representable", r.yes}};
  std::string text = r.yes ? "REPRESENTABLE\n" : "NOT REPRESENTABLE\n";
  if (r.yes) {
    json m = json::array();
    for (std::size_t i = 0; i < r.measure.size(); ++i) {
      m.push_back(to_string(r.measure[i]));
      text += "  P({" + std::to_string(i) + "}) = " + to_string(r.measure[i]) + "\n";
    }
    j["measure"] = m;
  } else {
    j["certificate"] = certificate_json(r.certificate);
    j["certificate_verified"] = verify_certificate(r.certificate, ord);
    text += certificate_to_text(r.certificate);
    if (text.back() != '\n') text += '\n';
    text += std::string("certificate check: ") + (verify_certificate(r.certificate, ord) ? "ok" : "FAILED") + "\n";
    if (total && r.certificate.kind == BalancedCertificate::Kind::Balanced && o.fincan_bound > 0) {
      std::size_t k = static_cast<std::size_t>(o.fincan_bound) + 3;
      SkResult sk = check_sk(ord, k, 2);
      j["sk"] = {{"k", k}, {"violated", sk.violated}, {"distinct", sk.distinct}};
      text += sk.violated ? "S_" + std::to_string(sk.distinct) + " violated\n"
                          : "S_k holds up to k = " + std::to_string(k) + " (multiplicity 2)\n";
    }
  }
  if (total) text += "de Finetti axioms:\n" + report_text(ax);
  print(o, j, text);
  return kAnswered;
}

int cmd_quad(const Options& o) {
  if (o.sweep) {
    auto orders = quad_sweep_n2(o.fincan_bound);
    auto rank = [](const QuadOrder& q) {
      QuadN2Result r = quad_representable_n2(q);
      return r.yes ? r.region : quad_regions_n2().size();
    };
    std::stable_sort(orders.begin(), orders.end(), [&](const QuadOrder& a, const QuadOrder& b) { return rank(a) < rank(b); });
    json a = json::array();
    std::string text = std::to_string(orders.size()) + " orders on two atoms\n";
    for (const auto& q : orders) {
      QuadN2Result r = quad_representable_n2(q);
      std::string desc = r.yes ? quad_regions_n2()[r.region].description() : "not representable: " + r.reason;
      a.push_back({{"order", json::parse(quad_order_to_json(q))}, {"representable", r.yes}, {"region", desc}});
      text += "  " + desc + "\n";
    }
    print(o, {{"command", "quad"}, {"sweep", a}, {"count", orders.size()}}, text);
    return kAnswered;
  }
  QuadOrder q = quad_order_from_json(input_text(o));
  AxiomReport ax = quad_check_axioms(q, o.fincan_bound, o.fincan_bound);
  json j{{"command", "quad"}, {"atoms", q.atoms}, {"axioms", report_json(ax)}};
  std::string text = "Q axioms (bound " + std::to_string(o.fincan_bound) + "):\n" + report_text(ax);
  if (q.atoms == 2) {
    QuadN2Result r = quad_representable_n2(q);
    j["representable"] = r.yes;
    if (r.yes) {
      const auto& reg = quad_regions_n2()[r.region];
      j["region"] = reg.description();
      j["matrix"] = reg.matrix();
      text = "REPRESENTABLE  " + reg.description() + "  M = " + reg.matrix() + "\n" + text;
    } else {
      j["reason"] = r.reason;
      text = "NOT REPRESENTABLE  " + r.reason + "\n" + text;
    }
  }
  print(o, j, text);
  return kAnswered;
}

int cmd_certify(const Options& o) {
  Formula f = input_formula(o);
  PolyBudget b = budget(o);
  PolyVerdict v = decide(f, b);
  if (v.kind != PolyVerdict::Kind::UnsatCertified) {
    json j{{"command", "certify"}, {"verdict", verdict_name(v.kind)}};
    print(o, j, std::string("no certificate: ") + verdict_name(v.kind));
    return v.kind == PolyVerdict::Kind::Unknown ? kUnknown : kAnswered;
  }
  json a = json::array();
  std::string text = "UNSAT\n";
  for (std::size_t i = 0; i < v.proofs.size(); ++i) {
    const UnsatProof& p = v.proofs[i];
    json e;
    std::string check = "n/a";
    if (p.kind == UnsatProof::Kind::Psatz) {
      PsatzInput in = psatz_input(p.system);
      check = psatz_verify(p.psatz, in.F, in.G, in.H) ? "ok" : "FAILED";
      e["kind"] = "psatz";
    } else if (p.kind == UnsatProof::Kind::PruneTree) {
      check = replay_prune_tree(bp_problem(p.system), p.tree) ? "ok" : "FAILED";
      e["kind"] = "prune_tree";
      PsatzInput in = psatz_input(p.system);
      if (auto c = psatz_search(in.F, in.G, in.H, o.psatz_degree)) {
        e["psatz"] = psatz_to_text(*c, p.system.var_names);
        e["psatz_verified"] = psatz_verify(*c, in.F, in.G, in.H);
      }
    } else {
      e["kind"] = "linear";
    }
    e["certificate"] = p.text;
    e["check"] = check;
    a.push_back(e);
    text += "disjunct " + std::to_string(i) + " (" + e["kind"].get<std::string>() + ", check " + check + "):\n" + p.text;
    if (text.back() != '\n') text += '\n';
    if (e.contains("psatz")) text += "psatz certificate:\n" + e["psatz"].get<std::string>() + "\n";
  }
  print(o, {{"command", "certify"}, {"verdict", "UNSAT"}, {"proofs", a}}, text);
  return kAnswered;
}

int cmd_reduce(const Options& o) {
  const std::string& mode = o.mode;
  if (mode == "same-cond") {
    Formula f = input_formula(o);
    Formula g = same_cond_to_comp(f);
    print(o, {{"command", "reduce"}, {"mode", mode}, {"formula", render(g)}}, render(g));
    return kAnswered;
  }
  if (mode == "etr") {
    EtrSystem s = parse_etr(input_text(o));
    IndEncoding enc = etr_inverse_to_ind(s);
    json j{{"command", "reduce"}, {"mode", mode}, {"variables", s.n}, {"atoms", enc.atoms},
           {"letters", free_letters(enc.formula).size()}, {"formula", render(enc.formula)}};
    std::string text = "# " + std::to_string(enc.atoms) + " atoms over " +
                       std::to_string(free_letters(enc.formula).size()) + " letters\n" + render(enc.formula);
    print(o, j, text);
    return kAnswered;
  }
  if (mode == "poly" || mode == "smtlib") {
    EtrSentence e = poly_to_etr(input_formula(o));
    json j{{"command", "reduce"}, {"mode", mode}, {"smtlib", e.smtlib}, {"plain", e.plain},
           {"events", e.event_count}, {"disjuncts", e.systems.size()}};
    print(o, j, mode == "smtlib" ? e.smtlib : e.plain);
    return kAnswered;
  }
  if (mode == "support") {
    SupportVerdict v = sat_by_support(input_formula(o), budget(o));
    json j{{"command", "reduce"}, {"mode", mode}, {"verdict", verdict_name(v.kind)}, {"support", v.support},
           {"supports_tried", v.supports_tried}};
    std::string text = std::string(verdict_name(v.kind)) + " after " + std::to_string(v.supports_tried) + " supports";
    if (!v.support.empty()) {
      text += "\n  support:";
      for (auto s : v.support) text += " " + std::to_string(s);
    }
    print(o, j, text);
    return v.kind == PolyVerdict::Kind::Unknown ? kUnknown : kAnswered;
  }
  throw CLI::ValidationError("reduce mode must be same-cond, etr, poly, smtlib or support");
}

int cmd_bench(const Options& o) {
  auto rows = run_bench(parse_plan(input_text(o)), o.threads);
  if (json_out(o)) {
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"id", r.id}, {"lang", lang_name(r.lang)}, {"letters", r.letters}, {"atoms", r.atoms},
                   {"seed", r.seed}, {"verdict", r.verdict}, {"kind", r.kind}, {"wall_ms", r.wall_ms},
                   {"budget_use", r.budget_use}});
    print(o, {{"command", "bench"}, {"rows", a}}, "");
  } else {
    std::cout << bench_to_csv(rows);
  }
  return kAnswered;
}

int cmd_fixtures(const Options& o) {
  HierarchyReport r = hierarchy_report();
  json j{{"command", "fixtures"}, {"all_ok", r.all_ok()}};
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"block", x.block}, {"lang", lang_name(x.lang)}, {"expected", x.expected}, {"got", x.got},
                    {"witness", x.witness}});
  j["rows"] = rows;
  std::string text = r.to_text();
  if (!o.out_dir.empty()) {
    auto paths = write_fixture_models(o.out_dir);
    j["written"] = paths;
    for (const auto& p : paths) text += "wrote " + p + "\n";
  }
  print(o, j, text);
  return r.all_ok() ? kAnswered : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probcalc: probability logics, from comparative to polynomial"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--max-denom", o.max_denom, "Denominator bound of the rational witness search")->capture_default_str();
  app.add_option("--bp-depth", o.bp_depth, "Branch-and-prune depth bound")->capture_default_str();
  app.add_option("--psatz-degree", o.psatz_degree, "Degree bound of the Positivstellensatz search")->capture_default_str();
  app.add_option("--fincan-bound", o.fincan_bound, "Bound for Q5/Q6 checks and the S_k audit")->capture_default_str();
  app.add_option("--timeout-ms", o.timeout_ms, "Wall-clock limit per decision, 0 for none")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for the randomized searches")->capture_default_str();

  auto input = [&](CLI::App* sub, bool lang) {
    sub->add_option("-e,--expr", o.expr, "Input given inline");
    sub->add_option("-f,--file", o.file, "Input file");
    if (lang) sub->add_option("--lang", o.lang, "Required language (comp, add, ind, confirm, same_cond, cond, quad, poly)");
  };
  std::map<std::string, int (*)(const Options&)> handlers{
      {"parse", cmd_parse},       {"classify", cmd_classify}, {"sat", cmd_sat},
      {"valid", cmd_valid},       {"model", cmd_model},       {"distinguish", cmd_distinguish},
      {"represent", cmd_represent}, {"quad", cmd_quad},       {"certify", cmd_certify},
      {"reduce", cmd_reduce},     {"bench", cmd_bench},       {"fixtures", cmd_fixtures}};

  input(app.add_subcommand("parse", "Parse and pretty-print a formula"), true);
  input(app.add_subcommand("classify", "Smallest language generating a formula"), false);
  input(app.add_subcommand("sat", "Decide satisfiability"), true);
  input(app.add_subcommand("valid", "Decide validity"), true);
  auto* model = app.add_subcommand("model", "Evaluate a formula in a model file");
  input(model, false);
  model->add_option("-m,--model", o.model1, "Model JSON")->required();
  auto* dist = app.add_subcommand("distinguish", "Search a formula telling two models apart");
  dist->add_option("--m1", o.model1, "First model JSON")->required();
  dist->add_option("--m2", o.model2, "Second model JSON")->required();
  dist->add_option("--lang", o.lang, "Language of the witness (default poly)");
  input(app.add_subcommand("represent", "Representability of a comparative order (JSON)"), false);
  auto* quad = app.add_subcommand("quad", "Axioms and representability of a quadratic order (JSON)");
  input(quad, false);
  quad->add_flag("--sweep", o.sweep, "Enumerate the representable orders on two atoms");
  input(app.add_subcommand("certify", "Emit and check an unsatisfiability certificate"), true);
  auto* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("mode", o.mode, "same-cond | etr | poly | smtlib | support")->required();
  input(reduce, true);
  auto* bench = app.add_subcommand("bench", "Run a benchmark plan, CSV to stdout");
  input(bench, false);
  bench->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  auto* fixtures = app.add_subcommand("fixtures", "Check the expressivity fixtures");
  fixtures->add_option("--out", o.out_dir, "Directory for the fixture model files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }
  try {
    CLI::App* sub = app.get_subcommands().front();
    return handlers.at(sub->get_name())(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position << ": " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
