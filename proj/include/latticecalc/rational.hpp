#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace latticecalc {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "n" or "p/q" (q > 0). The result is canonical (gcd-reduced).
Rational parse_rational(std::string_view text);

// Canonical text form: "n" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace latticecalc
