#include "probcalc/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace probcalc {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    bool neg = s[0] == '-';
    std::string body = neg ? s.substr(1) : s;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad decimal: " + text);
    Integer num(digits);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // Convergents h/k of the continued fraction of v.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    if (a > 1e15) break;
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) {
      long long t = (max_den - k0) / k1;
      long long hs = t * h1 + h0, ks = t * k1 + k0;
      if (t > 0 && std::fabs(static_cast<double>(hs) / ks - v) < std::fabs(static_cast<double>(h1) / k1 - v)) {
        h1 = hs;
        k1 = ks;
      }
      break;
    }
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  Rational q(static_cast<long>(h1), static_cast<long>(k1));
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace probcalc
