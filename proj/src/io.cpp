#include "probcalc/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "probcalc/expressivity.hpp"
#include "probcalc/rational.hpp"

namespace probcalc {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

Rational json_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw IoError("weights must be \"p/q\" strings or integers");
}

CmpRel json_rel(const json& v) {
  try {
    return parse_cmp_rel(v.get<std::string>());
  } catch (const std::exception& e) {
    throw IoError(std::string("bad relation: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

std::string model_to_json(const Model& m) {
  json j;
  j["mode"] = m.mode == Mode::Count ? "count" : "prob";
  j["letters"] = m.letters;
  json w = json::object();
  for (const auto& [s, v] : m.weights)
    if (v != 0) w[state_name(s, m.letters)] = to_string(v);
  j["weights"] = w;
  return j.dump(1);
}

Model model_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("letters") || !j.contains("weights")) throw IoError("model needs letters and weights");
  Model m;
  try {
    m.letters = j["letters"].get<std::vector<std::string>>();
  } catch (const json::exception&) {
    throw IoError("letters must be a list of names");
  }
  std::string mode = j.value("mode", "prob");
  if (mode == "count")
    m.mode = Mode::Count;
  else if (mode != "prob")
    throw IoError("mode must be prob or count");
  if (!j["weights"].is_object()) throw IoError("weights must be an object");
  for (const auto& [key, v] : j["weights"].items()) {
    StateIndex s;
    try {
      s = parse_state(key, m.letters);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    Rational w = json_rational(v);
    if (m.weights.count(s)) throw IoError("state " + key + " listed twice");
    if (w != 0) m.weights[s] = w;
  }
  try {
    m.validate();
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  return m;
}

std::string order_to_json(const CompOrder& o) {
  json j;
  j["atoms"] = o.atoms;
  json cs = json::array();
  for (const auto& c : o.comparisons()) cs.push_back({subset_to_text(c.a), subset_to_text(c.b), cmp_rel_text(c.rel)});
  j["comparisons"] = cs;
  return j.dump(1);
}

CompOrder order_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("atoms") || !j.contains("comparisons")) throw IoError("order needs atoms and comparisons");
  int atoms = j["atoms"].get<int>();
  if (atoms < 1 || atoms > 10) throw IoError("atoms must be between 1 and 10");
  std::vector<Comparison> cs;
  for (const auto& c : j["comparisons"]) {
    if (!c.is_array() || c.size() != 3) throw IoError("comparison must be [A, B, rel]");
    cs.push_back({parse_subset(c[0].get<std::string>(), atoms), parse_subset(c[1].get<std::string>(), atoms), json_rel(c[2])});
  }
  return CompOrder::from_comparisons(atoms, cs);
}

std::string pair_key(Subset a, Subset b) { return "(" + subset_to_text(a) + "," + subset_to_text(b) + ")"; }

std::pair<Subset, Subset> parse_pair_key(const std::string& text, int atoms) {
  auto open = text.find('(');
  auto mid = text.find("},");
  auto close = text.rfind(')');
  if (open == std::string::npos || mid == std::string::npos || close == std::string::npos || close < mid)
    throw ParseError("expected a pair key like ({0},{1})", 0);
  return {parse_subset(text.substr(open + 1, mid + 1 - open - 1), atoms),
          parse_subset(text.substr(mid + 2, close - mid - 2), atoms)};
}

std::string quad_order_to_json(const QuadOrder& q, bool symmetric) {
  json j;
  j["atoms"] = q.atoms;
  j["symmetric"] = symmetric;
  json cs = json::array();
  for (const auto& c : q.comparisons()) cs.push_back({pair_key(c.a, c.b), pair_key(c.c, c.d), cmp_rel_text(c.rel)});
  j["comparisons"] = cs;
  return j.dump(1);
}

BilinearMatrix matrix_from_json(const std::string& text) {
  json j = parse_json(text);
  const json& rows = j.is_object() ? j.at("matrix") : j;
  BilinearMatrix m;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& v : r) row.push_back(json_rational(v));
    m.m.push_back(row);
  }
  for (const auto& r : m.m)
    if (r.size() != m.m.size()) throw IoError("matrix must be square");
  if (m.m.empty()) throw IoError("matrix is empty");
  return m;
}

QuadOrder quad_order_from_json(const std::string& text) {
  json j = parse_json(text);
  if (j.is_object() && j.contains("matrix")) return order_from_matrix(matrix_from_json(text));
  if (!j.is_object() || !j.contains("atoms") || !j.contains("comparisons")) throw IoError("quadratic order needs atoms and comparisons");
  int atoms = j["atoms"].get<int>();
  if (atoms < 1 || atoms > 4) throw IoError("quadratic orders support 1 to 4 atoms");
  std::vector<QuadOrder::PairComparison> cs;
  for (const auto& c : j["comparisons"]) {
    if (!c.is_array() || c.size() != 3) throw IoError("comparison must be [pair, pair, rel]");
    auto [a, b] = parse_pair_key(c[0].get<std::string>(), atoms);
    auto [x, y] = parse_pair_key(c[1].get<std::string>(), atoms);
    cs.push_back({a, b, x, y, json_rel(c[2])});
  }
  return QuadOrder::from_comparisons(atoms, cs, j.value("symmetric", true));
}

std::vector<std::string> write_fixture_models(const std::string& dir) {
  std::vector<std::string> out;
  std::filesystem::create_directories(dir);
  for (const auto& b : hierarchy_blocks()) {
    for (int k = 1; k <= 2; ++k) {
      std::string path = dir + "/block_" + b.name + "_m" + std::to_string(k) + ".json";
      write_file(path, model_to_json(k == 1 ? b.m1 : b.m2) + "\n");
      out.push_back(path);
    }
  }
  return out;
}

}  // namespace probcalc
