#include "carnot/word_algebra.hpp"

#include <algorithm>

#include "carnot/error.hpp"

namespace carnot {

WordSeries WordSeries::one(int max_degree) {
  WordSeries s(max_degree);
  s.terms_.emplace(Word{}, Rational(1));
  return s;
}

WordSeries WordSeries::letter(int a, int max_degree) {
  WordSeries s(max_degree);
  if (max_degree >= 1) s.terms_.emplace(Word{a}, Rational(1));
  return s;
}

void WordSeries::add(const Word& w, const Rational& c) {
  if (static_cast<int>(w.size()) > max_degree_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WordSeries& WordSeries::operator+=(const WordSeries& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

WordSeries& WordSeries::operator-=(const WordSeries& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

WordSeries& WordSeries::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= q;
  return *this;
}

WordSeries operator*(const WordSeries& a, const WordSeries& b) {
  const int deg = std::min(a.max_degree_, b.max_degree_);
  WordSeries out(deg);
  Word w;
  for (const auto& [wa, ca] : a.terms_) {
    if (static_cast<int>(wa.size()) > deg) continue;
    for (const auto& [wb, cb] : b.terms_) {
      if (static_cast<int>(wa.size() + wb.size()) > deg) continue;
      w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  }
  return out;
}

WordSeries WordSeries::homogeneous(int degree) const {
  WordSeries out(max_degree_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) == degree) out.terms_.emplace(w, c);
  return out;
}

WordSeries commutator(const WordSeries& a, const WordSeries& b) { return a * b - b * a; }

WordSeries exp_series(const WordSeries& x) {
  const int k = x.max_degree();
  WordSeries sum = WordSeries::one(k);
  WordSeries power = WordSeries::one(k);
  for (int m = 1; m <= k; ++m) {
    power = power * x;
    power *= Rational(1, m);
    if (power.empty()) break;
    sum += power;
  }
  return sum;
}

WordSeries log_series(const WordSeries& g) {
  const int k = g.max_degree();
  WordSeries y = g - WordSeries::one(k);
  WordSeries sum(k);
  WordSeries power = WordSeries::one(k);
  for (int m = 1; m <= k; ++m) {
    power = power * y;
    if (power.empty()) break;
    sum += power * Rational(m % 2 == 1 ? 1 : -1, m);
  }
  return sum;
}

WordSeries right_nested(const Word& letters, int max_degree) {
  if (letters.empty()) throw Error(ErrorKind::ArityTooSmall, "empty bracket");
  WordSeries acc = WordSeries::letter(letters.back(), max_degree);
  for (std::size_t i = letters.size() - 1; i-- > 0;)
    acc = commutator(WordSeries::letter(letters[i], max_degree), acc);
  return acc;
}

std::vector<Word> lyndon_words(int letters, int max_len) {
  std::vector<Word> out;
  if (letters <= 0 || max_len <= 0) return out;
  Word w{-1};
  while (!w.empty()) {
    ++w.back();
    out.push_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == letters - 1) w.pop_back();
  }
  return out;
}

namespace {

bool is_lyndon(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
  }
  return !w.empty();
}

}  // namespace

WordSeries lyndon_polynomial(const Word& w, int max_degree) {
  if (w.size() == 1) return WordSeries::letter(w[0], max_degree);
  // Standard factorization: v is the longest proper Lyndon suffix.
  for (std::size_t split = 1; split < w.size(); ++split) {
    Word v(w.begin() + split, w.end());
    if (is_lyndon(v)) {
      Word u(w.begin(), w.begin() + split);
      return commutator(lyndon_polynomial(u, max_degree), lyndon_polynomial(v, max_degree));
    }
  }
  throw Error(ErrorKind::Internal, "word is not Lyndon");
}

std::vector<Rational> lyndon_coordinates(const WordSeries& lie, const std::vector<Word>& basis,
                                         int max_degree) {
  std::vector<Rational> coords(basis.size(), Rational(0));
  WordSeries rest = lie;
  while (!rest.empty()) {
    const auto& [w, c] = *rest.terms().begin();
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    if (it == basis.end() || *it != w)
      throw Error(ErrorKind::Internal, "element is not a Lie polynomial in the given basis");
    const Rational coeff = c;
    const std::size_t idx = static_cast<std::size_t>(it - basis.begin());
    coords[idx] += coeff;
    rest -= lyndon_polynomial(*it, max_degree) * coeff;
  }
  return coords;
}

}  // namespace carnot
