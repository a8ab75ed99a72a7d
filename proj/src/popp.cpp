#include "carnot/popp.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "carnot/config.hpp"

namespace carnot {

void PoppMetric::check_layer(int layer) const {
  if (layer < 1 || layer > step())
    throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(layer) + " of step-" +
                                                std::to_string(step()) + " metric");
}

PoppMetric build_popp(const GradedAlgebra& A) {
  PoppMetric P;
  P.dims = A.dims();
  const int d1 = A.dim(1);
  for (int l = 2; l <= A.step(); ++l)
    require_workload(saturating_pow(static_cast<std::size_t>(d1), static_cast<std::size_t>(l)), "popp tensor basis");

  // phi values of elementary tensors, as full vectors; column c of layer l is
  // [e_{s1}, phi(rest)] with c = s1 * d1^{l-1} + index(rest).
  std::vector<RVec> previous;
  for (int s = 0; s < d1; ++s) previous.push_back(basis_vec<Rational>(A, s));
  P.M.push_back(q_identity(static_cast<std::size_t>(d1)));
  for (int l = 2; l <= A.step(); ++l) {
    std::vector<RVec> current;
    current.reserve(previous.size() * d1);
    for (int s = 0; s < d1; ++s) {
      const RVec es = basis_vec<Rational>(A, s);
      for (const auto& w : previous) current.push_back(w.is_zero() ? w : bracket(A, es, w));
    }
    QMatrix m(static_cast<std::size_t>(A.dim(l)), std::vector<Rational>(current.size()));
    for (std::size_t c = 0; c < current.size(); ++c) {
      const auto block = project_layer(A, current[c], l);
      for (int r = 0; r < A.dim(l); ++r) m[r][c] = block[r];
    }
    P.M.push_back(std::move(m));
    previous = std::move(current);
  }

  P.density = 1.0;
  for (int l = 1; l <= A.step(); ++l) {
    const QMatrix& m = P.M[l - 1];
    QMatrix g;
    if (l == 1) {
      g = q_identity(static_cast<std::size_t>(d1));
    } else {
      const QMatrix mmt = q_multiply(m, q_transpose(m));
      if (q_rank(mmt) < mmt.size())
        throw Error(ErrorKind::NotBracketGenerating, "phi_" + std::to_string(l) + " is not surjective");
      g = q_inverse(mmt);
    }
    P.density *= std::sqrt(q_det(g).get_d());
    const DMatrix lower = cholesky(to_dmatrix(g));
    DMatrix r(lower.size(), std::vector<double>(lower.size()));
    DMatrix r_inv = r;
    const DMatrix lower_inv = d_inverse_lower(lower);
    for (std::size_t i = 0; i < lower.size(); ++i)
      for (std::size_t j = 0; j < lower.size(); ++j) {
        r[i][j] = lower[j][i];
        r_inv[i][j] = lower_inv[j][i];
      }
    P.G.push_back(std::move(g));
    P.R.push_back(std::move(r));
    P.R_inv.push_back(std::move(r_inv));
  }
  return P;
}

double layer_norm(const PoppMetric& P, int layer, const std::vector<double>& v) {
  P.check_layer(layer);
  const DMatrix& r = P.R[layer - 1];
  if (v.size() != r.size()) throw Error(ErrorKind::AlgebraMismatch, "layer vector has wrong size");
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double w = 0.0;
    for (std::size_t j = i; j < r.size(); ++j) w += r[i][j] * v[j];
    sum += w * w;
  }
  return std::sqrt(sum);
}

Rational layer_norm_squared(const PoppMetric& P, int layer, const std::vector<Rational>& v) {
  P.check_layer(layer);
  const QMatrix& g = P.G[layer - 1];
  if (v.size() != g.size()) throw Error(ErrorKind::AlgebraMismatch, "layer vector has wrong size");
  Rational sum = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) sum += v[i] * g[i][j] * v[j];
  return sum;
}

double omega(int d) {
  if (d < 0) throw Error(ErrorKind::Internal, "negative dimension");
  if (d <= 20) {
    double w = (d % 2 == 0) ? 1.0 : 2.0;
    for (int m = (d % 2 == 0) ? 2 : 3; m <= d; m += 2) w *= 2.0 * std::numbers::pi / m;
    return w;
  }
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double popp_box_volume(const std::vector<double>& radii, const std::vector<int>& dims) {
  if (radii.size() != dims.size()) throw Error(ErrorKind::AlgebraMismatch, "radii and dims differ in length");
  double v = 1.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw Error(ErrorKind::NonpositiveRadius, "radius must be positive");
    v *= std::pow(radii[i], dims[i]) * omega(dims[i]);
  }
  return v;
}

namespace {

int total_dim(const PoppMetric& P) {
  int n = 0;
  for (int d : P.dims) n += d;
  return n;
}

}  // namespace

double popp_covolume(const PoppMetric& P, const std::vector<RVec>& basis) {
  const int n = total_dim(P);
  if (static_cast<int>(basis.size()) != n)
    throw Error(ErrorKind::SingularBasis, "basis has " + std::to_string(basis.size()) + " vectors, need " +
                                              std::to_string(n));
  QMatrix m;
  for (const auto& b : basis) {
    if (static_cast<int>(b.size()) != n) throw Error(ErrorKind::AlgebraMismatch, "basis vector has wrong size");
    m.push_back(b.coords());
  }
  const Rational det = q_det(m);
  if (det == 0) throw Error(ErrorKind::SingularBasis, "basis is linearly dependent");
  return std::abs(det.get_d()) * P.density;
}

double popp_covolume(const PoppMetric& P, const std::vector<DVec>& basis) {
  const int n = total_dim(P);
  if (static_cast<int>(basis.size()) != n)
    throw Error(ErrorKind::SingularBasis, "basis has " + std::to_string(basis.size()) + " vectors, need " +
                                              std::to_string(n));
  DMatrix m;
  for (const auto& b : basis) {
    if (static_cast<int>(b.size()) != n) throw Error(ErrorKind::AlgebraMismatch, "basis vector has wrong size");
    m.push_back(b.coords());
  }
  const double det = d_det(m);
  if (det == 0.0) throw Error(ErrorKind::SingularBasis, "basis is linearly dependent");
  return std::abs(det) * P.density;
}

std::vector<DVec> orthonormal_frame(const PoppMetric& P) {
  const int n = total_dim(P);
  std::vector<DVec> out;
  int offset = 0;
  for (int l = 1; l <= P.step(); ++l) {
    const DMatrix& ri = P.R_inv[l - 1];
    for (std::size_t c = 0; c < ri.size(); ++c) {
      DVec v(static_cast<std::size_t>(n));
      for (std::size_t r = 0; r < ri.size(); ++r) v[offset + r] = ri[r][c];
      out.push_back(std::move(v));
    }
    offset += P.dims[l - 1];
  }
  return out;
}

std::string popp_to_json(const PoppMetric& P) {
  using nlohmann::json;
  auto qmat = [](const QMatrix& m) {
    json out = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      out.push_back(r);
    }
    return out;
  };
  json layers = json::array();
  for (int l = 1; l <= P.step(); ++l)
    layers.push_back({{"layer", l}, {"M", qmat(P.M[l - 1])}, {"G", qmat(P.G[l - 1])}, {"frame", P.R[l - 1]}});
  return json{{"dims", P.dims}, {"layers", layers}, {"density", P.density}}.dump();
}

}  // namespace carnot
