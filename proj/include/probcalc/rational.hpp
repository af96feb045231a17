#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace probcalc {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q", "p", or a finite decimal such as "0.12".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

Integer lcm_of_denominators(const std::vector<Rational>& values);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den);

}  // namespace probcalc
