#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace twistlab {

/// Exact rational arithmetic; no floating point anywhere in the statistics.
using Rational = mpq_class;

Rational make_rational(long num, long den);

/// Canonical "num/den" form (always with the denominator, e.g. "19/32", "1/1").
std::string to_frac_string(const Rational& r);

/// Accepts "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

}  // namespace twistlab
