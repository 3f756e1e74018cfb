#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dyext {

/// Exact rational number. All measures, weights and function values are
/// carried in this type.
using Rational = mpq_class;

/// Parses `p`, `p/q` or `p/2^k`. Throws ParseError on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p` for integers, otherwise `p/q`.
std::string to_string(const Rational& value);

/// Square root rendered as a double; the argument must be non-negative.
double sqrt_to_double(const Rational& value);

/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

/// Decimal rendering with 12 significant digits.
std::string decimal(double value);

/// True when the reduced denominator is a power of two.
bool is_dyadic(const Rational& value);

}  // namespace dyext
