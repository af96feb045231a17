#include "probcalc/axioms.hpp"

#include <set>
#include <stdexcept>

#include "probcalc/normalize.hpp"

namespace probcalc {

namespace {

Term P(const BoolExpr& e) { return Term::basic(e); }
Term plus(const Term& a, const Term& b) { return Term::sum(a, b); }
Term times(const Term& a, const Term& b) { return Term::prod(a, b); }
Formula ge(const Term& a, const Term& b) { return Formula::atom(Atom::geq(a, b)); }
Formula gt(const Term& a, const Term& b) { return Formula::atom(Atom::gt(a, b)); }
Formula eq(const Term& a, const Term& b) { return Formula::atom(Atom::eq(a, b)); }
Formula conj(const Formula& a, const Formula& b) { return Formula::conj(a, b); }
Formula implies(const Formula& a, const Formula& b) { return Formula::implies(a, b); }
Formula iff(const Formula& a, const Formula& b) { return Formula::iff(a, b); }
BoolExpr bnot(const BoolExpr& a) { return BoolExpr::negate(a); }
BoolExpr band(const BoolExpr& a, const BoolExpr& b) { return BoolExpr::conj(a, b); }
BoolExpr bor(const BoolExpr& a, const BoolExpr& b) { return BoolExpr::disj(a, b); }

using Build = std::function<Formula(const SchemaArgs&)>;

Schema make(std::string name, std::string group, std::size_t bools, std::size_t terms, Lang lang, Build b,
            bool context = false) {
  return Schema{std::move(name), std::move(group), bools, terms, lang, context, std::move(b)};
}

Schema fincan(std::size_t n) {
  return make("FinCan:" + std::to_string(n), "comp", 2 * n, 0, Lang::Comp, [n](const SchemaArgs& x) {
    std::vector<BoolExpr> as(x.bools.begin(), x.bools.begin() + static_cast<long>(n));
    std::vector<BoolExpr> bs(x.bools.begin() + static_cast<long>(n), x.bools.end());
    std::vector<Formula> ante{balanced_antecedent(as, bs)};
    for (std::size_t i = 0; i + 1 < n; ++i) ante.push_back(ge(P(as[i]), P(bs[i])));
    return implies(Formula::conj_all(ante), ge(P(bs[n - 1]), P(as[n - 1])));
  });
}

std::vector<Schema> build_table() {
  std::vector<Schema> t;
  const auto& top = BoolExpr::top();
  // base
  t.push_back(make("Lin", "base", 0, 3, Lang::Comp, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return conj(implies(conj(ge(a, b), ge(b, c)), ge(a, c)), Formula::disj(ge(a, b), ge(b, a)));
  }));
  t.push_back(make("Bool", "base", 0, 4, Lang::Comp, [](const SchemaArgs& x) {
    auto p = ge(x.terms[0], x.terms[1]);
    return implies(p, implies(ge(x.terms[2], x.terms[3]), p));
  }));
  t.push_back(make("Dist", "base", 2, 0, Lang::Comp, [](const SchemaArgs& x) {
    if (!is_tautology(bor(bnot(x.bools[1]), x.bools[0])))
      throw std::invalid_argument("Dist needs a tautological β → α");
    return ge(P(x.bools[0]), P(x.bools[1]));
  }));
  t.push_back(make("NonDeg", "base", 0, 0, Lang::Comp, [top](const SchemaArgs&) {
    return Formula::negate(ge(P(BoolExpr::bot()), P(top)));
  }));
  // additive
  t.push_back(make("Add", "add", 2, 0, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.bools[0], &b = x.bools[1];
    return eq(P(a), plus(P(band(a, b)), P(band(a, bnot(b)))));
  }));
  t.push_back(make("Assoc", "add", 0, 3, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return eq(plus(a, plus(b, c)), plus(plus(a, b), c));
  }));
  t.push_back(make("Comm", "add", 0, 2, Lang::Add, [](const SchemaArgs& x) {
    return eq(plus(x.terms[0], x.terms[1]), plus(x.terms[1], x.terms[0]));
  }));
  t.push_back(make("Zero", "add", 0, 1, Lang::Add,
                   [](const SchemaArgs& x) { return eq(plus(x.terms[0], Term::zero()), x.terms[0]); }));
  t.push_back(make("2Canc", "add", 0, 6, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3], &e = x.terms[4], &f = x.terms[5];
    return implies(conj(ge(plus(a, e), plus(c, f)), ge(plus(b, f), plus(d, e))), ge(plus(a, b), plus(c, d)));
  }));
  t.push_back(make("Contr", "add", 0, 4, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3];
    return implies(conj(ge(plus(a, b), plus(c, d)), ge(d, b)), ge(a, c));
  }));
  // derived lemmas
  t.push_back(make("NonNull", "lemma", 0, 1, Lang::Add, [](const SchemaArgs& x) { return ge(x.terms[0], Term::zero()); }));
  t.push_back(make("Refl", "lemma", 0, 1, Lang::Add, [](const SchemaArgs& x) { return ge(x.terms[0], x.terms[0]); }));
  t.push_back(make("Mono", "lemma", 0, 2, Lang::Add,
                   [](const SchemaArgs& x) { return ge(plus(x.terms[0], x.terms[1]), x.terms[0]); }));
  t.push_back(make("1Canc", "lemma", 0, 3, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return iff(ge(plus(a, c), plus(b, c)), ge(a, b));
  }));
  t.push_back(make("Dupl", "lemma", 0, 2, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1];
    return iff(ge(plus(a, a), plus(b, b)), ge(a, b));
  }));
  t.push_back(make("Comb", "lemma", 0, 4, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3];
    return implies(conj(ge(a, b), ge(c, d)), ge(plus(a, c), plus(b, d)));
  }));
  t.push_back(make("Sub1", "lemma", 0, 5, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3], &e = x.terms[4];
    return implies(eq(plus(e, c), a), iff(ge(plus(a, d), plus(b, c)), ge(plus(e, d), b)));
  }));
  t.push_back(make("Sub2", "lemma", 0, 5, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3], &e = x.terms[4];
    return implies(eq(plus(e, c), a), iff(ge(plus(b, c), plus(a, d)), ge(b, plus(e, d))));
  }));
  t.push_back(make("Elim", "lemma", 0, 5, Lang::Add, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3], &e = x.terms[4];
    return implies(conj(gt(plus(e, a), b), gt(c, plus(e, d))), gt(plus(a, c), plus(b, d)));
  }));
  t.push_back(make(
      "Repl", "lemma", 0, 2, Lang::Add,
      [](const SchemaArgs& x) {
        if (!x.context) throw std::invalid_argument("Repl needs a context formula");
        const auto &a = x.terms[0], &b = x.terms[1];
        return implies(eq(a, b), iff(*x.context, replace_terms(*x.context, a, b, x.positions)));
      },
      true));
  // comparative
  t.push_back(make("Quasi", "comp", 2, 0, Lang::Comp, [](const SchemaArgs& x) {
    const auto &a = x.bools[0], &b = x.bools[1];
    return iff(ge(P(a), P(b)), ge(P(band(a, bnot(b))), P(band(b, bnot(a)))));
  }));
  t.push_back(make("Ext", "comp", 4, 0, Lang::Comp, [top](const SchemaArgs& x) {
    const auto &a1 = x.bools[0], &a2 = x.bools[1], &b1 = x.bools[2], &b2 = x.bools[3];
    auto equiv = [](const BoolExpr& p, const BoolExpr& q) { return bor(band(p, q), band(bnot(p), bnot(q))); };
    return implies(conj(ge(P(equiv(a1, a2)), P(top)), ge(P(equiv(b1, b2)), P(top))),
                   implies(ge(P(a1), P(b1)), ge(P(a2), P(b2))));
  }));
  for (std::size_t n = 1; n <= 4; ++n) t.push_back(fincan(n));
  // polynomial
  t.push_back(make("Assoc·", "poly", 0, 3, Lang::Poly, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return eq(times(a, times(b, c)), times(times(a, b), c));
  }));
  t.push_back(make("Comm·", "poly", 0, 2, Lang::Poly, [](const SchemaArgs& x) {
    return eq(times(x.terms[0], x.terms[1]), times(x.terms[1], x.terms[0]));
  }));
  t.push_back(make("Zero·", "poly", 0, 1, Lang::Poly,
                   [](const SchemaArgs& x) { return eq(times(x.terms[0], Term::zero()), Term::zero()); }));
  t.push_back(make("One", "poly", 0, 1, Lang::Poly,
                   [](const SchemaArgs& x) { return eq(times(x.terms[0], Term::one()), x.terms[0]); }));
  t.push_back(make("Canc", "poly", 0, 3, Lang::Poly, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return implies(gt(c, Term::zero()), iff(ge(times(a, c), times(b, c)), ge(a, b)));
  }));
  t.push_back(make("Dist·", "poly", 0, 3, Lang::Poly, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2];
    return eq(times(a, plus(b, c)), plus(times(a, b), times(a, c)));
  }));
  t.push_back(make("Sub", "poly", 0, 4, Lang::Poly, [](const SchemaArgs& x) {
    const auto &a = x.terms[0], &b = x.terms[1], &c = x.terms[2], &d = x.terms[3];
    return implies(conj(ge(a, b), ge(c, d)), ge(plus(times(a, c), times(b, d)), plus(times(a, d), times(b, c))));
  }));
  return t;
}

Term replace_in(const Term& t, const Term& a, const Term& b, std::uint64_t positions, std::size_t& k) {
  if (t == a) {
    bool hit = k < 64 && ((positions >> k) & 1u);
    ++k;
    return hit ? b : t;
  }
  switch (t.kind()) {
    case Term::Kind::Sum: {
      Term l = replace_in(t.lhs(), a, b, positions, k);
      return Term::sum(l, replace_in(t.rhs(), a, b, positions, k));
    }
    case Term::Kind::Prod: {
      Term l = replace_in(t.lhs(), a, b, positions, k);
      return Term::prod(l, replace_in(t.rhs(), a, b, positions, k));
    }
    default:
      return t;
  }
}

template <class F>
Formula map_atoms(const Formula& f, const F& fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return Formula::atom(fn(f.atom_value()));
    case Formula::Kind::Not: return Formula::negate(map_atoms(f.lhs(), fn));
    case Formula::Kind::And: {
      Formula l = map_atoms(f.lhs(), fn);
      return Formula::conj(l, map_atoms(f.rhs(), fn));
    }
    case Formula::Kind::Or: {
      Formula l = map_atoms(f.lhs(), fn);
      return Formula::disj(l, map_atoms(f.rhs(), fn));
    }
    case Formula::Kind::Implies: {
      Formula l = map_atoms(f.lhs(), fn);
      return Formula::implies(l, map_atoms(f.rhs(), fn));
    }
  }
  return f;
}

BoolExpr state_conj(StateIndex s, const std::vector<std::string>& letters) {
  BoolExpr d = BoolExpr::top();
  for (std::size_t j = 0; j < letters.size(); ++j) {
    BoolExpr l = BoolExpr::letter(letters[j]);
    if (!letter_true(s, j)) l = bnot(l);
    d = j == 0 ? l : band(d, l);
  }
  return d;
}

Model random_model(const std::vector<std::string>& letters, int max_den, std::mt19937_64& rng) {
  std::size_t n = std::size_t{1} << letters.size();
  std::uniform_int_distribution<int> w(0, max_den);
  std::vector<Rational> v(n);
  Rational total;
  while (total == 0) {
    total = 0;
    for (auto& x : v) {
      x = w(rng);
      total += x;
    }
  }
  for (auto& x : v) x /= total;
  return model_from_vector(letters, v);
}

}  // namespace

const std::vector<Schema>& schema_table() {
  static const std::vector<Schema> t = build_table();
  return t;
}

Schema find_schema(const std::string& name) {
  static const std::map<std::string, std::string> alias{
      {"Assoc*", "Assoc·"}, {"Comm*", "Comm·"}, {"Zero*", "Zero·"}, {"Dist*", "Dist·"}};
  std::string key = alias.count(name) ? alias.at(name) : name;
  if (key.rfind("FinCan:", 0) == 0) {
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(key.substr(7), &used);
      if (used != key.size() - 7) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n == 0) throw std::invalid_argument("FinCan needs a positive length: " + name);
    return fincan(n);
  }
  for (const auto& s : schema_table())
    if (s.name == key) return s;
  throw std::invalid_argument("unknown schema: " + name);
}

Formula instantiate(const Schema& s, const SchemaArgs& args) {
  if (args.bools.size() != s.bools || args.terms.size() != s.terms)
    throw std::invalid_argument(s.name + " takes " + std::to_string(s.bools) + " Boolean and " +
                                std::to_string(s.terms) + " term arguments");
  return s.build(args);
}

Formula instantiate(const std::string& name, const SchemaArgs& args) { return instantiate(find_schema(name), args); }

Formula balanced_antecedent(const std::vector<BoolExpr>& as, const std::vector<BoolExpr>& bs) {
  if (as.size() != bs.size() || as.empty()) throw std::invalid_argument("balanced lists need equal positive length");
  std::size_t n = as.size();
  if (n > 10) throw std::invalid_argument("balanced lists longer than 10 are not supported");
  std::vector<BoolExpr> all(as);
  all.insert(all.end(), bs.begin(), bs.end());
  BoolExpr disj;
  bool any = false;
  for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask) {
    std::uint32_t lo = mask & ((1u << n) - 1), hi = mask >> n;
    if (__builtin_popcount(lo) != __builtin_popcount(hi)) continue;
    BoolExpr d = (mask & 1u) ? bnot(all[0]) : all[0];
    for (std::size_t i = 1; i < all.size(); ++i) d = band(d, ((mask >> i) & 1u) ? bnot(all[i]) : all[i]);
    disj = any ? bor(disj, d) : d;
    any = true;
  }
  return eq(P(disj), P(BoolExpr::top()));
}

Formula replace_terms(const Formula& f, const Term& a, const Term& b, std::uint64_t positions) {
  std::size_t k = 0;
  return map_atoms(f, [&](const Atom& at) {
    if (at.kind != Atom::Kind::Cmp) return at;
    Atom out = at;
    for (auto& side : out.sides) side = replace_in(side, a, b, positions, k);
    return out;
  });
}

const char* validity_name(Validity::Kind k) {
  switch (k) {
    case Validity::Kind::Valid: return "valid";
    case Validity::Kind::Countermodel: return "countermodel";
    case Validity::Kind::Unknown: return "unknown";
  }
  return "?";
}

Validity validity(const Formula& f, const PolyBudget& b) {
  Validity v;
  v.verdict = decide(Formula::negate(f), b);
  switch (v.verdict.kind) {
    case PolyVerdict::Kind::SatRational:
      v.kind = Validity::Kind::Countermodel;
      v.countermodel = v.verdict.model;
      break;
    case PolyVerdict::Kind::SatNumeric: v.kind = Validity::Kind::Countermodel; break;
    case PolyVerdict::Kind::UnsatCertified: v.kind = Validity::Kind::Valid; break;
    case PolyVerdict::Kind::Unknown: v.kind = Validity::Kind::Unknown; break;
  }
  return v;
}

BoolExpr random_bool(const std::vector<std::string>& letters, std::mt19937_64& rng) {
  std::size_t n = std::size_t{1} << letters.size();
  std::uint64_t table = rng();
  BoolExpr d = BoolExpr::bot();
  bool any = false;
  for (std::size_t s = 0; s < n; ++s) {
    if (!((table >> s) & 1u)) continue;
    d = any ? bor(d, state_conj(s, letters)) : state_conj(s, letters);
    any = true;
  }
  return d;
}

Term random_term(Lang lang, const std::vector<std::string>& letters, std::mt19937_64& rng) {
  auto leaf = [&] {
    switch (rng() % 8) {
      case 0: return Term::zero();
      case 1: return Term::one();
      default: return P(random_bool(letters, rng));
    }
  };
  if (lang == Lang::Comp) return P(random_bool(letters, rng));
  if (lang == Lang::Add) {
    Term t = leaf();
    for (std::size_t k = rng() % 3; k > 0; --k) t = plus(t, leaf());
    return t;
  }
  std::function<Term(int)> rec = [&](int depth) -> Term {
    if (depth == 0 || rng() % 3 == 0) return leaf();
    Term l = rec(depth - 1);
    Term r = rec(depth - 1);
    return rng() % 2 ? plus(l, r) : times(l, r);
  };
  return rec(2);
}

SchemaArgs random_args(const Schema& s, const std::vector<std::string>& letters, std::mt19937_64& rng) {
  SchemaArgs a;
  for (std::size_t i = 0; i < s.bools; ++i) a.bools.push_back(random_bool(letters, rng));
  if (s.name == "Dist") a.bools[0] = bor(a.bools[1], a.bools[0]);
  for (std::size_t i = 0; i < s.terms; ++i) a.terms.push_back(random_term(s.lang, letters, rng));
  if (s.context) {
    const Term& t = a.terms.at(0);
    auto side = [&] {
      switch (rng() % 3) {
        case 0: return t;
        case 1: return plus(t, random_term(s.lang, letters, rng));
        default: return random_term(s.lang, letters, rng);
      }
    };
    std::vector<Formula> parts;
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
      Term l = side();
      Term r = side();
      Formula at = rng() % 2 ? ge(l, r) : gt(l, r);
      parts.push_back(rng() % 3 == 0 ? Formula::negate(at) : at);
    }
    a.context = rng() % 2 ? Formula::conj_all(parts) : Formula::disj_all(parts);
    a.positions = rng();
  }
  return a;
}

std::vector<Model> small_models(const std::vector<std::string>& letters, int max_den) {
  std::size_t n = std::size_t{1} << letters.size();
  std::set<std::vector<Rational>> seen;
  std::vector<Model> out;
  std::vector<long> cur(n, 0);
  for (long d = 1; d <= max_den; ++d) {
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
      if (i + 1 == n) {
        cur[i] = left;
        std::vector<Rational> w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = Rational(cur[k], d);
        for (auto& x : w) x.canonicalize();
        if (seen.insert(w).second) out.push_back(model_from_vector(letters, w));
        return;
      }
      for (long v = 0; v <= left; ++v) {
        cur[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, d);
  }
  return out;
}

std::optional<FuzzHit> soundness_fuzz(const Schema& s, std::size_t trials, std::uint64_t seed,
                                      const std::vector<std::string>& letters, int max_den) {
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Formula f = instantiate(s, random_args(s, letters, rng));
    Model m = random_model(letters, max_den, rng);
    if (!satisfies(m, f)) return FuzzHit{f, m};
  }
  return std::nullopt;
}

std::optional<FuzzHit> soundness_fuzz(const std::string& name, std::size_t trials, std::uint64_t seed,
                                      const std::vector<std::string>& letters, int max_den) {
  return soundness_fuzz(find_schema(name), trials, seed, letters, max_den);
}

std::optional<FuzzHit> exhaustive_check(const Schema& s, std::size_t instances, std::uint64_t seed,
                                        const std::vector<std::string>& letters, int max_den) {
  std::mt19937_64 rng(seed);
  auto models = small_models(letters, max_den);
  for (std::size_t i = 0; i < instances; ++i) {
    Formula f = instantiate(s, random_args(s, letters, rng));
    for (const auto& m : models)
      if (!satisfies(m, f)) return FuzzHit{f, m};
  }
  return std::nullopt;
}

Relativized relativize(const Formula& f, const std::string& fresh) {
  auto letters = free_letters(f);
  for (const auto& l : letters)
    if (l == fresh) throw std::invalid_argument("letter " + fresh + " already occurs in the formula");
  BoolExpr A = BoolExpr::letter(fresh);
  Relativized r;
  r.body = map_atoms(f, [&](const Atom& at) {
    if (at.kind != Atom::Kind::Cmp || at.lhs().kind() != Term::Kind::Basic || at.rhs().kind() != Term::Kind::Basic)
      throw WrongFragment("relativization covers comparative formulas only");
    Atom out = at;
    out.sides = {P(band(at.lhs().event(), A)), P(band(at.rhs().event(), A))};
    return out;
  });
  std::vector<Formula> parts;
  for (StateIndex s = 0; s < (StateIndex{1} << letters.size()); ++s) {
    BoolExpr d = state_conj(s, letters);
    parts.push_back(eq(P(band(d, A)), P(band(d, bnot(A)))));
  }
  r.pi = Formula::conj_all(parts);
  return r;
}

Model polarize_model(const Model& m, const BoolExpr& alpha, const std::string& fresh) {
  for (const auto& l : m.letters)
    if (l == fresh) throw std::invalid_argument("letter " + fresh + " already occurs in the model");
  Model out{m.letters, {}, m.mode};
  out.letters.push_back(fresh);
  LetterIndex li(m.letters);
  StateIndex neg = StateIndex{1} << m.letters.size();
  for (const auto& [s, w] : m.weights) {
    if (w == 0) continue;
    if (holds(alpha, s, li)) {
      out.weights[s] = w / 2;
      out.weights[s | neg] = w / 2;
    } else {
      out.weights[s] = w;
    }
  }
  return out;
}

}  // namespace probcalc
