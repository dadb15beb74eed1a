#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flagram {

using Integer = mpz_class;
using Rational = mpq_class;

// Always "p/q", including q == 1.
std::string to_fraction_string(const Rational& value);

// Accepts "p/q" or a bare integer; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Exact value of a finite double.
Rational exact_rational(double value);

Integer pow2(unsigned exponent);

}  // namespace flagram
