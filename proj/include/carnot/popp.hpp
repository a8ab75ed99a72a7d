#pragma once

// Scalar products on the layers induced by minimal-norm preimages under the
// bracket maps phi_i : V_1^{(x)i} -> V_i, and the resulting volume density.

#include <string>
#include <vector>

#include "carnot/graded_algebra.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

struct PoppMetric {
  std::vector<int> dims;
  // Indexed by layer - 1. M[i] is d_i x d1^i (columns in lexicographic
  // multi-index order); M[0] is the identity.
  std::vector<QMatrix> M;
  std::vector<QMatrix> G;
  // R[i] = L^T with G[i] = L L^T, so that |R v| is the layer norm.
  std::vector<DMatrix> R;
  std::vector<DMatrix> R_inv;
  // prod_i sqrt(det G_i): the density of the volume in graded coordinates.
  double density = 1.0;

  int step() const { return static_cast<int>(dims.size()); }
  void check_layer(int layer) const;
};

PoppMetric build_popp(const GradedAlgebra& A);

double layer_norm(const PoppMetric& P, int layer, const std::vector<double>& v);

template <class S>
double layer_norm_of(const PoppMetric& P, int layer, const std::vector<S>& v) {
  std::vector<double> d;
  d.reserve(v.size());
  for (const auto& x : v) d.push_back(ScalarOps<S>::to_double(x));
  return layer_norm(P, layer, d);
}

// Exact squared norm v^T G_i v for rational v.
Rational layer_norm_squared(const PoppMetric& P, int layer, const std::vector<Rational>& v);

// u = M_i^T G_i v, the minimal-norm solution of M_i u = v.
template <class S>
std::vector<S> minimal_preimage(const PoppMetric& P, int layer, const std::vector<S>& v) {
  P.check_layer(layer);
  const QMatrix& G = P.G[layer - 1];
  const QMatrix& M = P.M[layer - 1];
  if (v.size() != G.size()) throw Error(ErrorKind::AlgebraMismatch, "layer vector has wrong size");
  std::vector<S> gv(v.size(), S(0));
  for (std::size_t r = 0; r < G.size(); ++r)
    for (std::size_t c = 0; c < G.size(); ++c)
      if (G[r][c] != 0 && !ScalarOps<S>::is_zero(v[c])) gv[r] += v[c] * ScalarOps<S>::from_rational(G[r][c]);
  const std::size_t n = M.empty() ? 0 : M[0].size();
  std::vector<S> u(n, S(0));
  for (std::size_t r = 0; r < M.size(); ++r) {
    if (ScalarOps<S>::is_zero(gv[r])) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (M[r][c] != 0) u[c] += gv[r] * ScalarOps<S>::from_rational(M[r][c]);
  }
  return u;
}

// phi_i applied to tensor coefficients.
template <class S>
std::vector<S> apply_phi(const PoppMetric& P, int layer, const std::vector<S>& u) {
  P.check_layer(layer);
  const QMatrix& M = P.M[layer - 1];
  std::vector<S> out(M.size(), S(0));
  for (std::size_t r = 0; r < M.size(); ++r) {
    if (u.size() != M[r].size()) throw Error(ErrorKind::AlgebraMismatch, "tensor has wrong size");
    for (std::size_t c = 0; c < u.size(); ++c)
      if (M[r][c] != 0 && !ScalarOps<S>::is_zero(u[c])) out[r] += u[c] * ScalarOps<S>::from_rational(M[r][c]);
  }
  return out;
}

// Unit ball volume of R^d.
double omega(int d);

double popp_box_volume(const std::vector<double>& radii, const std::vector<int>& dims);

// |det| of the basis written in the orthonormal frame.
double popp_covolume(const PoppMetric& P, const std::vector<RVec>& basis);
double popp_covolume(const PoppMetric& P, const std::vector<DVec>& basis);

// Basis vectors orthonormal for the induced scalar product.
std::vector<DVec> orthonormal_frame(const PoppMetric& P);

std::string popp_to_json(const PoppMetric& P);

}  // namespace carnot
