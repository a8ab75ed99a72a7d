#pragma once

// Piecewise horizontal paths built from commutator words.

#include <vector>

#include "carnot/adjustment.hpp"

namespace carnot {

struct Letter {
  int position;  // index into the row, 0-based
  int sign;      // +1 or -1
};

// Word of [x_1, [x_2, ..., x_j]_c]_c in the letters x_i^{+-1}.
std::vector<Letter> word_of_commutator(int j);

template <class S>
struct HorizontalPath {
  std::vector<GVec<S>> segments;
  GVec<S> endpoint;
  double length = 0.0;
};

template <class S>
HorizontalPath<S> path_from_segments(const GradedAlgebra& A, std::vector<GVec<S>> segments) {
  HorizontalPath<S> path;
  path.endpoint = zero_vec<S>(A);
  for (auto& s : segments) {
    if (s.is_zero()) continue;
    if (!is_horizontal(A, s)) throw Error(ErrorKind::Internal, "path segment is not horizontal");
    path.length += horizontal_norm(s, A.dim(1));
    path.endpoint = bch_product(A, path.endpoint, s);
    path.segments.push_back(std::move(s));
  }
  return path;
}

template <class S>
HorizontalPath<S> path_from_tuple(const GradedAlgebra& A, const AdjustedTuple<S>& t) {
  std::vector<GVec<S>> segments;
  for (const auto& set : t.sets) {
    const auto word = word_of_commutator(set.layer);
    for (const auto& row : set.rows) {
      if (is_zero_row(row)) continue;
      for (const auto& letter : word) segments.push_back(letter.sign > 0 ? row[letter.position] : -row[letter.position]);
    }
  }
  return path_from_segments(A, std::move(segments));
}

template <class S>
struct Certificate {
  AdjustedTuple<S> tuple;
  HorizontalPath<S> path;
  double d_com = 0.0;
  double bound = 0.0;  // path length
};

// Explicit path from 0 to z; throws CertificateFailure if the endpoint misses.
template <class S>
Certificate<S> certified_dcc_upper(const GradedAlgebra& A, const PoppMetric& P, const GVec<S>& z,
                                   const RootContext<S>& ctx) {
  Certificate<S> c{adjust_tuple(A, P, z, ctx), {}, 0.0, 0.0};
  c.path = path_from_tuple(A, c.tuple);
  if (!same_element(c.path.endpoint, z)) throw Error(ErrorKind::CertificateFailure, "path endpoint differs from target");
  c.d_com = d_com_k(A, c.tuple);
  c.bound = c.path.length;
  return c;
}

// Length of the abelianized displacement, a lower bound for d_cc.
template <class S>
double dcc_lower_bound(const GradedAlgebra& A, const GVec<S>& x) {
  return horizontal_norm(x, A.dim(1));
}

}  // namespace carnot
