#pragma once

#include <gmpxx.h>
#include <string>

namespace mloop {

/// Exact rational numbers with arbitrary-precision integer parts.
using Rational = mpq_class;

/// Canonical text form: "3/2", "-1", "0".
std::string rat_str(const Rational &q);

/// Parses signed integers and fractions ("a/b"). Throws ParseError on garbage.
Rational rat_parse(const std::string &s);

inline bool rat_is_zero(const Rational &q) { return sgn(q) == 0; }

} // namespace mloop
