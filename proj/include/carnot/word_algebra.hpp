#pragma once

// Truncated free associative algebra over Q on letters 0..N-1, used to
// derive BCH coefficients and Hall-type bases of free nilpotent algebras.

#include <map>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using Word = std::vector<int>;

class WordSeries {
 public:
  explicit WordSeries(int max_degree) : max_degree_(max_degree) {}

  static WordSeries one(int max_degree);
  static WordSeries letter(int a, int max_degree);

  int max_degree() const { return max_degree_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Word& w, const Rational& c);
  WordSeries& operator+=(const WordSeries& o);
  WordSeries& operator-=(const WordSeries& o);
  WordSeries& operator*=(const Rational& q);
  friend WordSeries operator+(WordSeries a, const WordSeries& b) { return a += b; }
  friend WordSeries operator-(WordSeries a, const WordSeries& b) { return a -= b; }
  friend WordSeries operator*(WordSeries a, const Rational& q) { return a *= q; }
  friend WordSeries operator*(const WordSeries& a, const WordSeries& b);

  // Terms of exactly this length.
  WordSeries homogeneous(int degree) const;

 private:
  int max_degree_;
  std::map<Word, Rational> terms_;
};

WordSeries commutator(const WordSeries& a, const WordSeries& b);
WordSeries exp_series(const WordSeries& x);
// log of a series with constant term 1.
WordSeries log_series(const WordSeries& g);

// Associative expansion of [a_1, [a_2, [..., a_p]]].
WordSeries right_nested(const Word& letters, int max_degree);

// Lyndon words of length <= max_len over `letters` letters, in lexicographic
// order.
std::vector<Word> lyndon_words(int letters, int max_len);
// Standard bracketing of a Lyndon word, expanded in the associative algebra.
WordSeries lyndon_polynomial(const Word& w, int max_degree);

// Coordinates of a homogeneous Lie polynomial in the Lyndon basis of its
// degree (basis given as the sorted Lyndon words of that length). Relies on
// the lexicographically smallest word of a Lie polynomial being Lyndon.
std::vector<Rational> lyndon_coordinates(const WordSeries& lie, const std::vector<Word>& basis,
                                         int max_degree);

}  // namespace carnot
