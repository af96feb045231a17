#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "probcalc/axioms.hpp"
#include "probcalc/bench.hpp"
#include "probcalc/expressivity.hpp"
#include "probcalc/io.hpp"
#include "probcalc/polysolve.hpp"
#include "probcalc/reductions.hpp"
#include "probcalc/represent.hpp"

namespace py = pybind11;
using namespace probcalc;

namespace {

PolyBudget budget(long max_denom, long timeout_ms, std::uint64_t seed) {
  PolyBudget b;
  b.max_denom = max_denom;
  b.timeout_ms = timeout_ms;
  b.seed = seed;
  return b;
}

py::dict weights_dict(const Model& m) {
  py::dict w;
  for (const auto& [s, v] : m.weights)
    if (v != 0) w[py::str(state_name(s, m.letters))] = to_string(v);
  return w;
}

const char* verdict_key(PolyVerdict::Kind k) {
  switch (k) {
    case PolyVerdict::Kind::SatRational: return "sat";
    case PolyVerdict::Kind::SatNumeric: return "sat-numeric";
    case PolyVerdict::Kind::UnsatCertified: return "unsat";
    default: return "unknown";
  }
}

py::dict verdict_dict(const PolyVerdict& v) {
  py::dict d;
  d["verdict"] = verdict_key(v.kind);
  switch (v.kind) {
    case PolyVerdict::Kind::SatRational:
      d["letters"] = v.model.letters;
      d["weights"] = weights_dict(v.model);
      break;
    case PolyVerdict::Kind::SatNumeric: {
      py::dict w;
      for (std::size_t s = 0; s < v.numeric.size(); ++s)
        if (v.numeric[s] != 0) w[py::str(state_name(s, v.letters))] = v.numeric[s];
      d["letters"] = v.letters;
      d["weights"] = w;
      d["residual"] = v.residual;
      break;
    }
    case PolyVerdict::Kind::UnsatCertified: {
      py::list proofs;
      for (const auto& p : v.proofs) proofs.append(p.text);
      d["proofs"] = proofs;
      break;
    }
    case PolyVerdict::Kind::Unknown:
      d["report"] = v.report;
      break;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "probcalc core bindings";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_ValueError);

  m.def("parse", [](const std::string& text) { return render(parse_formula(text)); }, py::arg("text"),
        "Parse a formula and render it canonically.");
  m.def("classify", [](const std::string& text) { return std::string(lang_name(classify(parse_formula(text)))); },
        py::arg("text"), "Smallest language generating the formula.");

  m.def(
      "sat",
      [](const std::string& text, long max_denom, long timeout_ms, std::uint64_t seed) {
        Formula f = parse_formula(text);
        PolyVerdict v;
        {
          py::gil_scoped_release release;
          v = decide(f, budget(max_denom, timeout_ms, seed));
        }
        return verdict_dict(v);
      },
      py::arg("text"), py::arg("max_denom") = 64, py::arg("timeout_ms") = 0, py::arg("seed") = 1,
      "Decide satisfiability. Returns a dict with 'verdict' and a witness or proofs.");

  m.def(
      "valid",
      [](const std::string& text, long timeout_ms) {
        Formula f = parse_formula(text);
        Validity v;
        {
          py::gil_scoped_release release;
          v = validity(f, budget(64, timeout_ms, 1));
        }
        py::dict d;
        d["verdict"] = validity_name(v.kind);
        if (v.kind == Validity::Kind::Countermodel) {
          d["letters"] = v.countermodel.letters;
          d["weights"] = weights_dict(v.countermodel);
        }
        return d;
      },
      py::arg("text"), py::arg("timeout_ms") = 0);

  m.def(
      "evaluate", [](const std::string& model_json, const std::string& text) {
        return satisfies(model_from_json(model_json), parse_formula(text));
      },
      py::arg("model_json"), py::arg("text"), "Truth of a formula in a model given as JSON.");

  m.def(
      "represent",
      [](const std::string& order_json) {
        CompOrder o = order_from_json(order_json);
        RepresentResult r = representable(o, !o.rel.total());
        py::dict d;
        d["representable"] = r.yes;
        if (r.yes) {
          py::list ms;
          for (const auto& q : r.measure) ms.append(to_string(q));
          d["measure"] = ms;
        } else {
          d["certificate"] = certificate_to_text(r.certificate);
        }
        return d;
      },
      py::arg("order_json"));

  m.def("hierarchy", [] {
    py::list rows;
    for (const auto& r : hierarchy_report().rows) {
      py::dict d;
      d["block"] = r.block;
      d["lang"] = lang_name(r.lang);
      d["expected"] = r.expected;
      d["distinguishable"] = r.got;
      d["witness"] = r.witness;
      rows.append(d);
    }
    return rows;
  });

  m.def(
      "etr_to_ind",
      [](const std::string& etr_text) {
        IndEncoding enc = etr_inverse_to_ind(parse_etr(etr_text));
        py::dict d;
        d["formula"] = render(enc.formula);
        d["atoms"] = enc.atoms;
        d["delta"] = enc.delta;
        return d;
      },
      py::arg("etr_text"), "Encode an inverse-ETR system as an independence formula.");

  m.def(
      "generate",
      [](const std::string& lang, int letters, int atoms, std::uint64_t seed) {
        return render(generate(lang_from_name(lang), letters, atoms, seed));
      },
      py::arg("lang"), py::arg("letters"), py::arg("atoms"), py::arg("seed") = 1);
}
