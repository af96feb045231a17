#pragma once

#include <stdexcept>
#include <string>

#include "probcalc/represent.hpp"
#include "probcalc/semantics.hpp"

namespace probcalc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// {"mode":"prob"|"count", "letters":[...], "weights":{"A&~B":"5/36", ...}}
// Weights may also be JSON integers. Absent states weigh 0.
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);

// {"atoms":n, "comparisons":[["{0}","{1}",">="], ...]}
std::string order_to_json(const CompOrder& o);
CompOrder order_from_json(const std::string& text);

// {"atoms":n, "symmetric":true, "comparisons":[["({0},{1})","({1},{1})",">"], ...]}
// or {"matrix":[["1","2"],["2","4"]]} for the order induced by a bilinear form.
std::string quad_order_to_json(const QuadOrder& q, bool symmetric = true);
QuadOrder quad_order_from_json(const std::string& text);
BilinearMatrix matrix_from_json(const std::string& text);

// "({0},{1})"
std::string pair_key(Subset a, Subset b);
std::pair<Subset, Subset> parse_pair_key(const std::string& text, int atoms);

// Writes <dir>/block_<X>_m1.json and _m2.json for the hierarchy blocks A-F;
// returns the paths written.
std::vector<std::string> write_fixture_models(const std::string& dir);

}  // namespace probcalc
