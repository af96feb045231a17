#include "probcalc/expressivity.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace probcalc {

namespace {

BoolExpr state_conj(StateIndex s, const std::vector<std::string>& letters) {
  BoolExpr d;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    BoolExpr l = BoolExpr::letter(letters[j]);
    if (!letter_true(s, j)) l = BoolExpr::negate(l);
    d = j == 0 ? l : BoolExpr::conj(d, l);
  }
  return d;
}

// Shortest expressions per event for up to three letters, by size-layered search.
std::vector<std::optional<BoolExpr>> shortest_table(const std::vector<std::string>& letters) {
  const std::size_t states = std::size_t{1} << letters.size();
  const std::size_t events = std::size_t{1} << states;
  const std::uint64_t full = events - 1;
  std::vector<std::optional<BoolExpr>> best(events);
  std::vector<std::vector<std::uint64_t>> by_size(1);
  std::size_t found = 0;
  auto add = [&](std::uint64_t m, BoolExpr e, std::size_t size) {
    if (best[m]) return;
    best[m] = std::move(e);
    if (by_size.size() <= size) by_size.resize(size + 1);
    by_size[size].push_back(m);
    ++found;
  };
  add(full, BoolExpr::top(), 1);
  add(0, BoolExpr::bot(), 1);
  for (std::size_t j = 0; j < letters.size(); ++j) {
    std::uint64_t m = 0;
    for (StateIndex s = 0; s < states; ++s)
      if (letter_true(s, j)) m |= std::uint64_t{1} << s;
    add(m, BoolExpr::letter(letters[j]), 1);
  }
  for (std::size_t size = 2; size <= 11 && found < events; ++size) {
    if (by_size.size() <= size) by_size.resize(size + 1);
    for (std::uint64_t m : std::vector<std::uint64_t>(by_size[size - 1])) add(~m & full, BoolExpr::negate(*best[m]), size);
    for (std::size_t ls = 1; ls + 1 < size; ++ls) {
      std::size_t rs = size - 1 - ls;
      if (rs < ls) break;
      auto left = by_size[ls];
      auto right = by_size[rs];
      for (std::uint64_t a : left)
        for (std::uint64_t b : right) {
          add(a & b, BoolExpr::conj(*best[a], *best[b]), size);
          add(a | b, BoolExpr::disj(*best[a], *best[b]), size);
        }
    }
  }
  return best;
}

Model aligned(const Model& m, const std::vector<std::string>& letters) {
  if (m.letters == letters) return m;
  std::vector<std::size_t> pos(letters.size());
  for (std::size_t j = 0; j < letters.size(); ++j) {
    auto it = std::find(m.letters.begin(), m.letters.end(), letters[j]);
    pos[j] = static_cast<std::size_t>(it - m.letters.begin());
  }
  Model out{letters, {}, m.mode};
  for (const auto& [s, w] : m.weights) {
    StateIndex t = 0;
    for (std::size_t j = 0; j < letters.size(); ++j)
      if ((s >> pos[j]) & 1u) t |= StateIndex{1} << j;
    out.weights[t] += w;
  }
  return out;
}

std::vector<Rational> event_probs(const Model& m) {
  const std::size_t states = m.state_count();
  std::vector<Rational> p(std::size_t{1} << states);
  for (std::size_t e = 1; e < p.size(); ++e) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(e));
    p[e] = p[e & (e - 1)] + m.weight(low);
  }
  return p;
}

Term repeat_sum(const Term& t, const Integer& k) {
  Term out = t;
  for (Integer i = 1; i < k; ++i) out = Term::sum(out, t);
  return out;
}

}  // namespace

BoolExpr event_expr(std::uint64_t mask, const std::vector<std::string>& letters) {
  if (letters.size() <= 3) {
    static std::mutex mu;
    static std::map<std::vector<std::string>, std::vector<std::optional<BoolExpr>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(letters);
    if (it == cache.end()) it = cache.emplace(letters, shortest_table(letters)).first;
    if (mask < it->second.size() && it->second[mask]) return *it->second[mask];
  }
  const std::size_t states = std::size_t{1} << letters.size();
  if (states < 64 && mask == (std::uint64_t{1} << states) - 1) return BoolExpr::top();
  BoolExpr d = BoolExpr::bot();
  bool any = false;
  for (StateIndex s = 0; s < states && s < 64; ++s) {
    if (!((mask >> s) & 1u)) continue;
    d = any ? BoolExpr::disj(d, state_conj(s, letters)) : state_conj(s, letters);
    any = true;
  }
  return d;
}

std::pair<Integer, Integer> fraction_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("fraction_between needs lo < hi");
  for (Integer m = 1;; ++m) {
    Rational scaled = lo * Rational(m);
    Integer n;
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    n += 1;
    Rational q(n, m);
    q.canonicalize();
    if (q < hi) return {n, m};
  }
}

DistinguishResult distinguish(const Model& m1in, const Model& m2in, Lang lang, std::size_t max_atoms) {
  std::vector<std::string> l1 = m1in.letters, l2 = m2in.letters;
  std::sort(l1.begin(), l1.end());
  std::sort(l2.begin(), l2.end());
  if (l1 != l2) throw std::invalid_argument("models disagree on their letters");
  if (m1in.letters.size() > 5) throw std::invalid_argument("distinguish supports at most 5 letters");
  const auto& letters = m1in.letters;
  Model m1 = m1in.normalized();
  Model m2 = aligned(m2in, letters).normalized();
  auto p1 = event_probs(m1);
  auto p2 = event_probs(m2);
  const std::uint64_t E = p1.size();
  DistinguishResult res;
  auto ev = [&](std::uint64_t e) { return event_expr(e, letters); };
  auto P = [&](std::uint64_t e) { return Term::basic(ev(e)); };
  auto finish = [&](const Atom& a) {
    Formula f = Formula::atom(a);
    if (satisfies(m1, f) == satisfies(m2, f)) throw std::logic_error("distinguishing atom failed re-verification: " + render(f));
    res.witness = f;
    return res;
  };
  auto budget_left = [&] {
    if (res.atoms_checked++ < max_atoms) return true;
    res.exhaustive = false;
    return false;
  };

  if (lang == Lang::Poly) lang = Lang::Add;
  switch (lang) {
    case Lang::Comp:
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = 0; b < E; ++b) {
          if (!budget_left()) return res;
          if ((p1[a] >= p1[b]) != (p2[a] >= p2[b])) return finish(Atom::geq(P(a), P(b)));
        }
      return res;
    case Lang::Add: {
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = 0; b < E; ++b) {
          if (!budget_left()) return res;
          if ((p1[a] == 2 * p1[b]) != (p2[a] == 2 * p2[b])) return finish(Atom::eq(P(a), Term::sum(P(b), P(b))));
        }
      for (std::uint64_t a = 0; a < E; ++a) {
        if (p1[a] == p2[a]) continue;
        bool first_low = p1[a] < p2[a];
        auto [n, m] = fraction_between(first_low ? p1[a] : p2[a], first_low ? p2[a] : p1[a]);
        // m copies of P(alpha) against n copies of P(T)
        return finish(Atom::geq(repeat_sum(Term::one(), n), repeat_sum(P(a), m)));
      }
      return res;
    }
    case Lang::Ind:
    case Lang::Confirm:
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = 0; b < E; ++b) {
          if (!budget_left()) return res;
          if ((p1[a] == p1[b]) != (p2[a] == p2[b])) return finish(Atom::eq(P(a), P(b)));
          Rational j1 = p1[a & b], j2 = p2[a & b], q1 = p1[a] * p1[b], q2 = p2[a] * p2[b];
          if (lang == Lang::Ind) {
            if ((j1 == q1) != (j2 == q2)) return finish(Atom::indep(ev(a), ev(b)));
          } else {
            if ((j1 >= q1) != (j2 >= q2)) return finish(Atom::confirm(ev(a), ev(b), true));
            if ((j1 <= q1) != (j2 <= q2)) return finish(Atom::confirm(ev(a), ev(b), false));
          }
        }
      return res;
    case Lang::SameCond:
      for (std::uint64_t g = 0; g < E; ++g)
        for (std::uint64_t a = 0; a < E; ++a)
          for (std::uint64_t b = 0; b < E; ++b) {
            if (!budget_left()) return res;
            bool t1 = p1[a & g] * p1[g] >= p1[b & g] * p1[g];
            bool t2 = p2[a & g] * p2[g] >= p2[b & g] * p2[g];
            if (t1 != t2) return finish(Atom::geq(Term::cond(ev(a), ev(g)), Term::cond(ev(b), ev(g))));
          }
      return res;
    case Lang::Cond: {
      auto side = [&](std::uint64_t a, std::uint64_t b) {
        return b == E - 1 ? P(a) : Term::cond(ev(a), ev(b));
      };
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = 0; b < E; ++b)
          for (std::uint64_t c = 0; c < E; ++c)
            for (std::uint64_t d = 0; d < E; ++d) {
              if (!budget_left()) return res;
              bool t1 = p1[a & b] * p1[d] >= p1[c & d] * p1[b];
              bool t2 = p2[a & b] * p2[d] >= p2[c & d] * p2[b];
              if (t1 != t2) return finish(Atom::geq(side(a, b), side(c, d)));
            }
      return res;
    }
    case Lang::Quad: {
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = a; b < E; ++b)
          for (std::uint64_t c = 0; c < E; ++c) {
            if (!budget_left()) return res;
            if ((p1[a] * p1[b] >= p1[c]) != (p2[a] * p2[b] >= p2[c]))
              return finish(Atom::geq(Term::prod(P(a), P(b)), P(c)));
          }
      for (std::uint64_t a = 0; a < E; ++a)
        for (std::uint64_t b = a; b < E; ++b)
          for (std::uint64_t c = 0; c < E; ++c)
            for (std::uint64_t d = c; d < E; ++d) {
              if (!budget_left()) return res;
              if ((p1[a] * p1[b] >= p1[c] * p1[d]) != (p2[a] * p2[b] >= p2[c] * p2[d]))
                return finish(Atom::geq(Term::prod(P(a), P(b)), Term::prod(P(c), P(d))));
            }
      return res;
    }
    case Lang::Poly: break;
  }
  return res;
}

std::optional<Formula> distinguishable(const Model& m1, const Model& m2, Lang lang) {
  return distinguish(m1, m2, lang).witness;
}

std::vector<FixtureBlock> hierarchy_blocks() {
  auto R = [](long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
  };
  std::vector<std::string> one{"A"}, two{"A", "B"};
  // two-letter states: A&B, ~A&B, A&~B, ~A&~B
  auto m2 = [&](Rational ab, Rational a_nb, Rational na_b, Rational na_nb) {
    return model_from_vector(two, {ab, na_b, a_nb, na_nb});
  };
  std::vector<FixtureBlock> out;
  out.push_back({"A", model_from_vector(one, {R(2, 3), R(1, 3)}), model_from_vector(one, {R(3, 5), R(2, 5)}),
                 {{Lang::Comp, false}, {Lang::Add, true}}});
  out.push_back({"B", m2(R(25, 36), R(5, 36), R(5, 36), R(1, 36)), m2(R(27, 36), R(4, 36), R(4, 36), R(1, 36)),
                 {{Lang::Comp, false}, {Lang::Ind, true}}});
  out.push_back({"C", m2(R(23, 36), R(6, 36), R(6, 36), R(1, 36)), m2(R(27, 36), R(4, 36), R(4, 36), R(1, 36)),
                 {{Lang::Comp, false}, {Lang::Ind, false}, {Lang::Confirm, true}}});
  out.push_back({"D", m2(R(1, 9), R(1, 3), R(5, 9), 0), m2(R(1, 9), R(5, 9), R(1, 3), 0),
                 {{Lang::Confirm, false}, {Lang::Comp, true}, {Lang::Cond, true}}});
  // alpha = A&B, beta = A&~B, gamma = ~A&B
  out.push_back({"E", m2(R(3, 20), R(4, 20), R(13, 20), 0),
                 m2(R(3, 20) - R(3, 100), R(4, 20) - R(1, 100), R(13, 20) + R(4, 100), 0),
                 {{Lang::Cond, false}, {Lang::Quad, true}}});
  out.push_back({"F", model_from_vector(one, {R(2, 3), R(1, 3)}), model_from_vector(one, {R(3, 4), R(1, 4)}),
                 {{Lang::Quad, false}, {Lang::Poly, true}}});
  return out;
}

bool HierarchyReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const HierarchyRow& r) { return r.ok(); });
}

std::string HierarchyReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << (r.ok() ? "ok   " : "FAIL ") << "block " << r.block << ' ' << lang_name(r.lang) << ": "
       << (r.got ? "distinguishable" : "indistinguishable");
    if (r.expected != r.got) os << " (expected " << (r.expected ? "distinguishable" : "indistinguishable") << ')';
    if (!r.witness.empty()) os << "  " << r.witness;
    os << '\n';
  }
  return os.str();
}

HierarchyReport hierarchy_report(const std::vector<FixtureBlock>& blocks) {
  HierarchyReport rep;
  for (const auto& b : blocks)
    for (const auto& [lang, expected] : b.expect) {
      auto w = distinguishable(b.m1, b.m2, lang);
      rep.rows.push_back({b.name, lang, expected, w.has_value(), w ? render(*w) : ""});
    }
  return rep;
}

}  // namespace probcalc
