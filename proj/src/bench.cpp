#include "probcalc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "probcalc/expressivity.hpp"

namespace probcalc {

namespace {

struct Gen {
  std::vector<std::string> letters;
  std::mt19937_64 rng;

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

  // Nonempty proper events mostly; now and then T or F.
  BoolExpr event() {
    const std::uint64_t states = std::uint64_t{1} << letters.size();
    const std::uint64_t full = states == 64 ? ~0ULL : (std::uint64_t{1} << states) - 1;
    switch (pick(10)) {
      case 0: return BoolExpr::top();
      case 1: return BoolExpr::bot();
      default: break;
    }
    std::uint64_t mask = 0;
    while (mask == 0 || mask == full) mask = rng() & full;
    return event_expr(mask, letters);
  }
  Term basic() { return Term::basic(event()); }

  Term sum(std::size_t max_len) {
    Term t = basic();
    for (std::size_t k = pick(max_len); k > 0; --k) t = Term::sum(t, basic());
    return t;
  }

  Term poly(int depth) {
    if (depth == 0 || pick(3) == 0) return basic();
    Term l = poly(depth - 1);
    Term r = poly(depth - 1);
    return pick(2) ? Term::sum(l, r) : Term::prod(l, r);
  }

  Atom cmp(Term a, Term b) {
    switch (pick(3)) {
      case 0: return Atom::geq(std::move(a), std::move(b));
      case 1: return Atom::gt(std::move(a), std::move(b));
      default: return Atom::eq(std::move(a), std::move(b));
    }
  }

  Atom atom(Lang lang) {
    switch (lang) {
      case Lang::Comp: return cmp(basic(), basic());
      case Lang::Add: return cmp(sum(4), sum(4));
      case Lang::Ind:
        if (pick(2)) return Atom::indep(event(), event());
        return cmp(basic(), basic());
      case Lang::Confirm:
        if (pick(2)) return Atom::confirm(event(), event(), pick(2) == 0);
        return cmp(basic(), basic());
      case Lang::SameCond: {
        BoolExpr g = event();
        return cmp(Term::cond(event(), g), Term::cond(event(), g));
      }
      case Lang::Cond: {
        auto side = [&] { return pick(3) ? Term::cond(event(), event()) : basic(); };
        return cmp(side(), side());
      }
      case Lang::Quad:
        if (pick(2)) return cmp(Term::prod(basic(), basic()), basic());
        return cmp(Term::prod(basic(), basic()), Term::prod(basic(), basic()));
      case Lang::Poly: return cmp(poly(2), poly(2));
    }
    return cmp(basic(), basic());
  }

  Formula combine(std::vector<Formula> parts) {
    for (auto& p : parts)
      if (pick(4) == 0) p = Formula::negate(p);
    Formula f = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      f = pick(4) == 0 ? Formula::disj(parts[i], f) : Formula::conj(parts[i], f);
    return f;
  }
};

}  // namespace

Formula generate(Lang lang, int letters, int atoms, std::uint64_t seed) {
  if (letters < 1 || letters > 6 || atoms < 1) throw std::invalid_argument("generate needs 1 <= letters <= 6, atoms >= 1");
  Gen g;
  for (int i = 0; i < letters; ++i) g.letters.push_back(std::string(1, static_cast<char>('A' + i)));
  g.rng.seed(seed);
  std::vector<Formula> parts;
  while (static_cast<int>(parts.size()) < atoms) {
    Atom a = g.atom(lang);
    if (generable(a, lang)) parts.push_back(Formula::atom(a));
  }
  return g.combine(parts);
}

std::vector<PlanRow> parse_plan(const std::string& text) {
  std::vector<PlanRow> out;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t here = offset;
    offset += line.size() + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string lang;
    if (!(ls >> lang)) continue;
    PlanRow r;
    try {
      r.lang = lang_from_name(lang);
    } catch (const std::exception&) {
      throw ParseError("unknown language '" + lang + "'", here);
    }
    if (!(ls >> r.letters >> r.atoms >> r.count >> r.timeout_ms >> r.seed))
      throw ParseError("expected: lang letters atoms count timeout_ms seed", here);
    out.push_back(r);
  }
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<PlanRow>& plan, unsigned threads) {
  struct Job {
    PlanRow row;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& r : plan)
    for (int i = 0; i < r.count; ++i) jobs.push_back({r, r.seed + static_cast<std::uint64_t>(i)});
  std::vector<BenchRow> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      const Job& j = jobs[i];
      BenchRow b;
      b.id = i;
      b.lang = j.row.lang;
      b.letters = j.row.letters;
      b.atoms = j.row.atoms;
      b.seed = j.seed;
      Formula f = generate(j.row.lang, j.row.letters, j.row.atoms, j.seed);
      PolyBudget budget;
      budget.timeout_ms = j.row.timeout_ms;
      budget.seed = j.seed;
      auto t0 = std::chrono::steady_clock::now();
      PolyVerdict v = decide(f, budget);
      b.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      b.budget_use = j.row.timeout_ms > 0 ? b.wall_ms / static_cast<double>(j.row.timeout_ms) : 0.0;
      switch (v.kind) {
        case PolyVerdict::Kind::SatRational: b.verdict = "sat", b.kind = "exact"; break;
        case PolyVerdict::Kind::SatNumeric: b.verdict = "sat", b.kind = "numeric"; break;
        case PolyVerdict::Kind::UnsatCertified: b.verdict = "unsat", b.kind = "exact"; break;
        case PolyVerdict::Kind::Unknown: b.verdict = "unknown", b.kind = "unknown"; break;
      }
      out[i] = b;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string bench_csv_header() { return "id,lang,letters,atoms,seed,verdict,kind,wall_ms,budget_use"; }

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << bench_csv_header() << '\n';
  char buf[64];
  for (const auto& r : rows) {
    os << r.id << ',' << lang_name(r.lang) << ',' << r.letters << ',' << r.atoms << ',' << r.seed << ','
       << r.verdict << ',' << r.kind << ',';
    std::snprintf(buf, sizeof buf, "%.3f,%.4f", r.wall_ms, r.budget_use);
    os << buf << '\n';
  }
  return os.str();
}

}  // namespace probcalc
