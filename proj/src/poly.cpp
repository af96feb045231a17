#include "probcalc/poly.hpp"

#include <cmath>

namespace probcalc {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::uint32_t mono_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

Poly Poly::var(Var v) { return monomial({{v, 1}}); }

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Poly::constant() const { return coeff({}); }

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

std::set<Var> Poly::vars() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) s.insert(v);
  return s;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1), base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m)
      for (std::uint32_t k = 0; k < e; ++k) t *= x.at(v);
    sum += t;
  }
  return sum;
}

double Poly::eval(const std::vector<double>& x) const {
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [v, e] : m) t *= std::pow(x.at(v), static_cast<double>(e));
    sum += t;
  }
  return sum;
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].first != v) continue;
      Monomial d = m;
      Rational k = c * static_cast<unsigned long>(d[i].second);
      if (--d[i].second == 0) d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
      out.add_term(d, k);
    }
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& p) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    std::uint32_t e = 0;
    for (const auto& f : m) {
      if (f.first == v) e = f.second;
      else rest.push_back(f);
    }
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    out += Poly::monomial(rest, c) * p.pow(e);
  }
  return out;
}

Poly Poly::rename(const std::map<Var, Var>& mp) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly t(c);
    for (const auto& [v, e] : m) t = t * Poly::monomial({{mp.at(v), e}});
    out += t;
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += c.get_str();
    for (const auto& [v, e] : m)
      for (std::uint32_t k = 0; k < e; ++k) out += "*" + names.at(v);
  }
  return out;
}

}  // namespace probcalc
