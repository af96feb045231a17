#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probcalc/polysolve.hpp"
#include "probcalc/syntax.hpp"

namespace probcalc {

// Random formula over letters A, B, C, ... with k atoms, each generable in
// `lang`. Deterministic in the seed.
Formula generate(Lang lang, int letters, int atoms, std::uint64_t seed);

struct PlanRow {
  Lang lang = Lang::Comp;
  int letters = 2;
  int atoms = 2;
  int count = 10;
  long timeout_ms = 2000;
  std::uint64_t seed = 1;
};

// One row per line: "lang letters atoms count timeout_ms seed"; '#' starts a comment.
std::vector<PlanRow> parse_plan(const std::string& text);

struct BenchRow {
  std::size_t id = 0;
  Lang lang = Lang::Comp;
  int letters = 0;
  int atoms = 0;
  std::uint64_t seed = 0;  // seed passed to generate
  std::string verdict;     // sat, unsat, unknown
  std::string kind;        // exact, numeric, unknown
  double wall_ms = 0;
  double budget_use = 0;   // wall time over the timeout
};

// Instances are numbered in plan order; instance i of a row uses seed + i.
std::vector<BenchRow> run_bench(const std::vector<PlanRow>& plan, unsigned threads = 1);

// Columns: id,lang,letters,atoms,seed,verdict,kind,wall_ms,budget_use
std::string bench_csv_header();
std::string bench_to_csv(const std::vector<BenchRow>& rows);

}  // namespace probcalc
