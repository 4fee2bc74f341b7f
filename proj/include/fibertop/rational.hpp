#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fibertop {

using Rational = mpq_class;

// Accepts "p/q" or an integer, with optional sign on p. Throws
// Error(kSyntaxError) on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

inline Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace fibertop
