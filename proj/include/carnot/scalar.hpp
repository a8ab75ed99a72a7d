#pragma once

// Uniform access to the three scalar modes: exact rationals (algebra data,
// lattice elements), exact radicals (certificates), and binary64 floats.

#include <cmath>

#include "carnot/radical.hpp"
#include "carnot/rational.hpp"

namespace carnot {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double coeff(const Rational&, double qd) { return qd; }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  }
};

template <>
struct ScalarOps<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static const Rational& coeff(const Rational& q, double) { return q; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool near(const Rational& a, const Rational& b, double) { return a == b; }
};

template <>
struct ScalarOps<Radical> {
  static Radical from_rational(const Rational& q) { return Radical(q); }
  static const Rational& coeff(const Rational& q, double) { return q; }
  static double to_double(const Radical& x) { return x.to_double(); }
  static bool is_zero(const Radical& x) { return x.is_zero(); }
  static bool near(const Radical& a, const Radical& b, double) { return a == b; }
};

}  // namespace carnot
