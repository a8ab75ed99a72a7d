#pragma once

// Small dense exact and floating-point linear algebra.

#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using QMatrix = std::vector<std::vector<Rational>>;
using DMatrix = std::vector<std::vector<double>>;

QMatrix q_identity(std::size_t n);
QMatrix q_transpose(const QMatrix& m);
QMatrix q_multiply(const QMatrix& a, const QMatrix& b);
std::vector<Rational> q_apply(const QMatrix& m, const std::vector<Rational>& v);

// Reduced row echelon form in place; returns the rank.
std::size_t q_row_reduce(QMatrix& m);
std::size_t q_rank(QMatrix m);
// Rows of the reduced echelon form spanning the row space.
QMatrix q_row_basis(QMatrix m);
Rational q_det(QMatrix m);
// Throws SingularBasis when not invertible.
QMatrix q_inverse(const QMatrix& m);

DMatrix to_dmatrix(const QMatrix& m);
// Lower-triangular L with L L^T = a; throws when a is not positive definite.
DMatrix cholesky(const DMatrix& a);
double d_det(DMatrix m);
DMatrix d_inverse_lower(const DMatrix& l);

}  // namespace carnot
