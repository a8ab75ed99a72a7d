#pragma once

// Truncated BCH group law in first-kind exponential coordinates, group
// commutators, and canonical right-nested coefficient tables.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "carnot/graded_algebra.hpp"

namespace carnot {

struct CoeffEntry {
  std::vector<int> idx;  // letters, 1-based
  Rational coeff;
};

struct CoeffTable {
  std::string kind;  // "beta" or "gamma"
  int param = 0;     // N for beta, j for gamma
  int step = 0;
  std::vector<CoeffEntry> entries;  // sorted by (length, idx)

  // Coefficient of a right-nested bracket, after normalizing the innermost
  // pair ([.., a, a] = 0, [.., b, a] = -[.., a, b]).
  Rational coefficient(const std::vector<int>& idx) const;
  std::string to_json() const;
};

// log(exp x_1 ... exp x_N) in right-nested brackets of degree 2..k.
std::shared_ptr<const CoeffTable> beta_table(int n_factors, int k);
// psi_j(x_1..x_j) - [x_1, ..., x_j] in right-nested brackets of degree j+1..k.
std::shared_ptr<const CoeffTable> gamma_table(int j, int k);

struct MaxCoeffs {
  Rational beta;
  Rational gamma;
};
MaxCoeffs max_coeff_constants(int d1, int j, int k);

namespace detail {

template <class S>
GVec<S> nested_from_letters(const GradedAlgebra& A, const std::vector<GVec<S>>& letters, const std::vector<int>& idx,
                            std::map<std::vector<int>, GVec<S>>& memo) {
  auto it = memo.find(idx);
  if (it != memo.end()) return it->second;
  GVec<S> out;
  if (idx.size() == 1) {
    out = letters[idx[0] - 1];
  } else {
    const std::vector<int> tail(idx.begin() + 1, idx.end());
    const GVec<S> inner = nested_from_letters(A, letters, tail, memo);
    out = inner.is_zero() ? inner : bracket(A, letters[idx[0] - 1], inner);
  }
  memo.emplace(idx, out);
  return out;
}

template <class S>
GVec<S> apply_table(const GradedAlgebra& A, const CoeffTable& table, const std::vector<GVec<S>>& letters) {
  GVec<S> out = zero_vec<S>(A);
  std::map<std::vector<int>, GVec<S>> memo;
  for (const auto& e : table.entries) {
    if (static_cast<int>(e.idx.size()) > A.step()) break;
    GVec<S> term = nested_from_letters(A, letters, e.idx, memo);
    if (term.is_zero()) continue;
    out += ScalarOps<S>::from_rational(e.coeff) * term;
  }
  return out;
}

}  // namespace detail

template <class S>
GVec<S> bch_product(const GradedAlgebra& A, const GVec<S>& x, const GVec<S>& y) {
  check_member(A, x.size());
  check_member(A, y.size());
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  GVec<S> out = x + y;
  if (A.step() < 2) return out;
  out += detail::apply_table(A, *beta_table(2, A.step()), std::vector<GVec<S>>{x, y});
  return out;
}

template <class S>
GVec<S> product_fold(const GradedAlgebra& A, const std::vector<GVec<S>>& xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyProduct, "product of no elements");
  GVec<S> acc = xs.front();
  check_member(A, acc.size());
  for (std::size_t i = 1; i < xs.size(); ++i) acc = bch_product(A, acc, xs[i]);
  return acc;
}

template <class S>
GVec<S> group_commutator(const GradedAlgebra& A, const GVec<S>& x, const GVec<S>& y) {
  return product_fold(A, std::vector<GVec<S>>{x, y, -x, -y});
}

// psi_n(x_1..x_n) = [x_1, psi_{n-1}(x_2..x_n)]_c
template <class S>
GVec<S> iterated_group_commutator(const GradedAlgebra& A, const std::vector<GVec<S>>& xs) {
  if (xs.size() < 2) throw Error(ErrorKind::ArityTooSmall, "iterated group commutator needs at least 2 elements");
  GVec<S> acc = xs.back();
  check_member(A, acc.size());
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = group_commutator(A, xs[i], acc);
  return acc;
}

}  // namespace carnot
