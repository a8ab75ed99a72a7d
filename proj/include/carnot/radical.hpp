#pragma once

// Exact arithmetic in towers of real radicals.
//
// A RadicalField is an append-only list of generators s_0, s_1, ... where
// s_i is the positive real root of s_i^{n_i} = c_i and c_i is a nonnegative
// element built from s_0..s_{i-1}. Elements are polynomials over Q in the
// generators, kept reduced (exponent of s_i below n_i). Reduction only uses
// true relations, so a polynomial that reduces to zero is zero as a real
// number; the converse may fail when a radicand happens to be a perfect
// power of an earlier element.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// 256-bit binary floating point used to evaluate radicals.
using HighPrec = mpf_class;
HighPrec make_high_prec(double x = 0.0);
HighPrec make_high_prec(const Rational& q);

// Exponents over the generators, trailing zeros trimmed.
using Monomial = std::vector<std::uint8_t>;
using RadicalPoly = std::map<Monomial, Rational>;

class RadicalField;

class Radical {
 public:
  Radical() = default;
  Radical(const Rational& q);  // NOLINT(google-explicit-constructor)
  Radical(long v) : Radical(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Radical(int v) : Radical(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Radical(const Rational& q, std::shared_ptr<RadicalField> field);
  Radical(RadicalPoly terms, std::shared_ptr<RadicalField> field);

  const std::shared_ptr<RadicalField>& field() const { return field_; }
  const RadicalPoly& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::optional<Rational> as_rational() const;
  HighPrec value() const;
  double to_double() const;
  int numeric_sign() const;

  Radical& operator+=(const Radical& o);
  Radical& operator-=(const Radical& o);
  Radical& operator*=(const Radical& o);
  Radical& operator*=(const Rational& q);

  friend Radical operator+(Radical a, const Radical& b) { return a += b; }
  friend Radical operator-(Radical a, const Radical& b) { return a -= b; }
  friend Radical operator*(Radical a, const Radical& b) { return a *= b; }
  friend Radical operator*(Radical a, const Rational& q) { return a *= q; }
  friend Radical operator*(const Rational& q, Radical a) { return a *= q; }
  Radical operator-() const;

  // Symbolic equality of reduced forms.
  friend bool operator==(const Radical& a, const Radical& b) { return a.terms_ == b.terms_; }

 private:
  void adopt_field(const Radical& o);
  void invalidate() { cached_.reset(); }

  std::shared_ptr<RadicalField> field_;
  RadicalPoly terms_;
  mutable std::optional<HighPrec> cached_;
};

class RadicalField {
 public:
  static std::shared_ptr<RadicalField> create();

  // Returns (sign(x), |x|^{1/n}). The root is rational when x is a rational
  // perfect power; otherwise a new generator is appended. x must belong to
  // this field (or be rational).
  std::pair<int, Radical> abs_root(const Radical& x, unsigned n);

  std::size_t size() const { return gens_.size(); }
  unsigned degree(std::size_t i) const { return gens_[i].degree; }
  const RadicalPoly& radicand(std::size_t i) const { return gens_[i].radicand; }
  const HighPrec& generator_value(std::size_t i) const { return gens_[i].value; }

  RadicalPoly multiply(const RadicalPoly& a, const RadicalPoly& b) const;
  HighPrec evaluate(const RadicalPoly& p) const;

 private:
  struct Generator {
    unsigned degree;
    RadicalPoly radicand;
    HighPrec value;
    std::vector<HighPrec> powers;  // value^0 .. value^(degree-1)
  };

  void reduce(RadicalPoly& p) const;

  std::vector<Generator> gens_;
  std::weak_ptr<RadicalField> self_;
};

}  // namespace carnot
