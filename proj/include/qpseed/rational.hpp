#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qpseed {

/// Exact coefficient type for potentials and trace-space linear algebra.
using Rational = mpq_class;

/// "p/q" (or "p" when the denominator is 1), always in lowest terms.
std::string to_string(const Rational& q);

/// Parses "p", "p/q", "-p/q". Also accepts the Unicode minus sign.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace qpseed
