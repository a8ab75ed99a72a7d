#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace carnot {

using Rational = mpq_class;

// Accepts "p", "p/q", and decimal notation such as "-1.25" or "3e-2"; the
// decimal forms are converted exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact conversion of a binary64 value.
inline Rational exact_from_double(double x) { return Rational(x); }

// The nonnegative rational r with r^n == q, if one exists (q >= 0).
std::optional<Rational> exact_root(const Rational& q, unsigned n);

Rational pow(const Rational& q, unsigned n);

}  // namespace carnot
