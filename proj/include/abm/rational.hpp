#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace abm {

// mpq_class keeps values canonical (reduced, positive denominator) after
// every arithmetic operation; parse_rational canonicalizes its input.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" and a leading sign. Throws InvalidArgument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Integer floor_of(const Rational& r);

}  // namespace abm
