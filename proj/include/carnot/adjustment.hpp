#pragma once

// Sets of horizontal vectors adjusted to a layer vector, and k-tuples of such
// sets whose group product reconstructs an arbitrary element.

#include <cmath>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "carnot/bch.hpp"
#include "carnot/popp.hpp"

namespace carnot {

// Where exact roots live: a radical tower for Radical, nothing for double.
template <class S>
struct RootContext;

template <>
struct RootContext<double> {
  std::pair<int, double> abs_root(double x, unsigned n) const {
    const int sign = x > 0 ? 1 : (x < 0 ? -1 : 0);
    return {sign, std::pow(std::abs(x), 1.0 / n)};
  }
  double lift(const Rational& q) const { return q.get_d(); }
};

template <>
struct RootContext<Radical> {
  std::shared_ptr<RadicalField> field = RadicalField::create();
  std::pair<int, Radical> abs_root(const Radical& x, unsigned n) const { return field->abs_root(x, n); }
  Radical lift(const Rational& q) const { return Radical(q, field); }
};

template <class S>
GVec<S> lift_vec(const RootContext<S>& ctx, const RVec& v) {
  std::vector<S> out;
  out.reserve(v.size());
  for (const auto& x : v.coords()) out.push_back(ctx.lift(x));
  return GVec<S>(std::move(out));
}

template <class S>
double horizontal_norm(const GVec<S>& v, int d1) {
  double sum = 0.0;
  for (int i = 0; i < d1; ++i) {
    const double x = ScalarOps<S>::to_double(v[i]);
    sum += x * x;
  }
  return std::sqrt(sum);
}

template <class S>
struct HorizontalSet {
  int layer = 1;
  std::vector<std::vector<GVec<S>>> rows;  // rows[n][i], each row has `layer` entries
};

template <class S>
bool is_zero_row(const std::vector<GVec<S>>& row) {
  for (const auto& x : row)
    if (x.is_zero()) return true;
  return false;
}

// Product of the iterated group commutators of the rows.
template <class S>
GVec<S> y_of(const GradedAlgebra& A, const HorizontalSet<S>& set) {
  GVec<S> acc = zero_vec<S>(A);
  for (const auto& row : set.rows) {
    if (is_zero_row(row)) continue;
    const GVec<S> c = row.size() == 1 ? row[0] : iterated_group_commutator(A, row);
    acc = bch_product(A, acc, c);
  }
  return acc;
}

// Sum of the iterated brackets of the rows.
template <class S>
GVec<S> Y_of(const GradedAlgebra& A, const HorizontalSet<S>& set) {
  GVec<S> acc = zero_vec<S>(A);
  for (const auto& row : set.rows) {
    if (is_zero_row(row)) continue;
    acc += iterated_bracket(A, row);
  }
  return acc;
}

template <class S>
double d_com(const GradedAlgebra& A, const HorizontalSet<S>& set) {
  double sum = 0.0;
  for (const auto& row : set.rows)
    for (const auto& x : row) sum += horizontal_norm(x, A.dim(1));
  return sum;
}

// sqrt(sum_n prod_i |X_ni|^2)
template <class S>
double nu_of(const GradedAlgebra& A, const HorizontalSet<S>& set) {
  double sum = 0.0;
  for (const auto& row : set.rows) {
    double p = 1.0;
    for (const auto& x : row) {
      const double n = horizontal_norm(x, A.dim(1));
      p *= n * n;
    }
    sum += p;
  }
  return std::sqrt(sum);
}

// Index digits (s_1..s_j) of tensor column c, most significant first.
inline std::vector<int> multi_index(int c, int d1, int j) {
  std::vector<int> s(static_cast<std::size_t>(j));
  for (int i = j - 1; i >= 0; --i) {
    s[i] = c % d1;
    c /= d1;
  }
  return s;
}

template <class S>
HorizontalSet<S> adjust_to_layer_vector(const GradedAlgebra& A, const PoppMetric& P, const std::vector<S>& z, int j,
                                        const RootContext<S>& ctx) {
  if (j < 1 || j > A.step()) throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(j));
  if (static_cast<int>(z.size()) != A.dim(j)) throw Error(ErrorKind::AlgebraMismatch, "layer vector has wrong size");
  const int d1 = A.dim(1);
  HorizontalSet<S> set;
  set.layer = j;
  if (j == 1) {
    set.rows.assign(static_cast<std::size_t>(d1), std::vector<GVec<S>>{zero_vec<S>(A)});
    set.rows[0][0] = inject_layer(A, z, 1);
    return set;
  }
  const std::vector<S> u = minimal_preimage(P, j, z);
  set.rows.reserve(u.size());
  for (std::size_t c = 0; c < u.size(); ++c) {
    std::vector<GVec<S>> row(static_cast<std::size_t>(j), zero_vec<S>(A));
    if (!ScalarOps<S>::is_zero(u[c])) {
      const auto s = multi_index(static_cast<int>(c), d1, j);
      auto [sign, sigma] = ctx.abs_root(u[c], static_cast<unsigned>(j));
      for (int i = 0; i < j; ++i) row[i][s[i]] = (i == 0 && sign < 0) ? S(-sigma) : sigma;
    }
    set.rows.push_back(std::move(row));
  }
  const double nu = nu_of(A, set);
  const double expected = layer_norm_of(P, j, z);
  if (std::abs(nu - expected) > 1e-9 * std::max(1.0, expected))
    throw Error(ErrorKind::Internal, "adjusted set norm " + std::to_string(nu) + " differs from layer norm " +
                                         std::to_string(expected));
  return set;
}

struct AdjustCheck {
  bool sum_condition = false;  // exact for exact scalars, 1e-9 relative for floats
  double nu = 0.0;
  double layer_norm = 0.0;
  double norm_rel_error = 0.0;
  double balance_rel_error = 0.0;
};

template <class S>
AdjustCheck check_adjusted(const GradedAlgebra& A, const PoppMetric& P, const HorizontalSet<S>& set,
                           const std::vector<S>& z) {
  AdjustCheck out;
  const GVec<S> target = inject_layer(A, z, set.layer);
  const GVec<S> sum = Y_of(A, set);
  if constexpr (std::is_same_v<S, double>) {
    double scale = 1.0;
    double err = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) {
      scale = std::max(scale, std::abs(target[i]));
      err = std::max(err, std::abs(sum[i] - target[i]));
    }
    out.sum_condition = err <= 1e-9 * scale;
  } else {
    out.sum_condition = (sum - target).is_zero();
  }
  out.nu = nu_of(A, set);
  out.layer_norm = layer_norm_of(P, set.layer, z);
  out.norm_rel_error = std::abs(out.nu - out.layer_norm) / std::max(out.layer_norm, 1e-300);
  if (out.layer_norm == 0.0) out.norm_rel_error = out.nu;
  for (const auto& row : set.rows) {
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& x : row) {
      const double n = horizontal_norm(x, A.dim(1));
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    if (hi > 0) out.balance_rel_error = std::max(out.balance_rel_error, (hi - lo) / hi);
  }
  return out;
}

// Row-wise scaling {t X_ni}, adjusted to t^j Z_j.
template <class S>
HorizontalSet<S> rescale(const HorizontalSet<S>& set, const S& t) {
  HorizontalSet<S> out = set;
  for (auto& row : out.rows)
    for (auto& x : row) x *= t;
  return out;
}

// A_l = P_l(y(S)) for l = j+1..k.
template <class S>
std::map<int, std::vector<S>> error_vectors_A(const GradedAlgebra& A, const HorizontalSet<S>& set) {
  std::map<int, std::vector<S>> out;
  const GVec<S> y = y_of(A, set);
  for (int l = set.layer + 1; l <= A.step(); ++l) out.emplace(l, project_layer(A, y, l));
  return out;
}

template <class S>
struct AdjustedTuple {
  GVec<S> target;
  std::vector<HorizontalSet<S>> sets;           // sets[j-1] for layer j
  std::vector<std::vector<S>> adjusted_to;      // layer-j vector Z_j - B_j^(j-1)
  std::map<std::pair<int, int>, std::vector<S>> B;  // (l, j) -> B_l^(j), j < l
  std::vector<GVec<S>> prefixes;                // product of y(S^(m)) for m <= j
};

template <class S>
bool same_element(const GVec<S>& a, const GVec<S>& b) {
  if constexpr (std::is_same_v<S, double>) {
    double scale = 1.0;
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
      err = std::max(err, std::abs(a[i] - b[i]));
    }
    return err <= 1e-9 * scale;
  } else {
    return (a - b).is_zero();
  }
}

template <class S>
AdjustedTuple<S> adjust_tuple(const GradedAlgebra& A, const PoppMetric& P, const GVec<S>& z, const RootContext<S>& ctx) {
  check_member(A, z.size());
  AdjustedTuple<S> t;
  t.target = z;
  GVec<S> prefix = zero_vec<S>(A);
  for (int j = 1; j <= A.step(); ++j) {
    std::vector<S> w = project_layer(A, z, j);
    const std::vector<S> b = project_layer(A, prefix, j);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= b[i];
    t.sets.push_back(adjust_to_layer_vector(A, P, w, j, ctx));
    t.adjusted_to.push_back(w);
    prefix = bch_product(A, prefix, y_of(A, t.sets.back()));
    t.prefixes.push_back(prefix);
    for (int l = j + 1; l <= A.step(); ++l) t.B.emplace(std::make_pair(l, j), project_layer(A, prefix, l));
  }
  if (!same_element(prefix, z))
    throw Error(ErrorKind::CertificateFailure, "adjusted tuple does not reconstruct its target");
  return t;
}

template <class S>
double d_com_k(const GradedAlgebra& A, const AdjustedTuple<S>& t) {
  double sum = 0.0;
  for (const auto& s : t.sets) sum += d_com(A, s);
  return sum;
}

}  // namespace carnot
