#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace quomm {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a/b" or "a" with an optional leading minus.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// value^exponent; a negative exponent requires value != 0.
Rational pow(const Rational& value, long exponent);

}  // namespace quomm
