#pragma once

// Randomized checks of the quantitative lemmas. Each returns the largest
// observed ratio lhs / rhs; the lemma holds when it stays <= 1.

#include <algorithm>
#include <cmath>

#include "carnot/certificates.hpp"
#include "carnot/path.hpp"
#include "oracles.hpp"

namespace lemmas {

using namespace carnot;

// Random layer vector with norm at most `max_norm`, magnitudes spread over
// several orders.
inline std::vector<Rational> random_layer(const GradedAlgebra& A, const PoppMetric& P, int layer,
                                          oracle::RandomRationals& rng, double max_norm = 1.0) {
  std::vector<Rational> z;
  for (int c = 0; c < A.dim(layer); ++c) z.push_back(rng.next(20, 9));
  double n = layer_norm_of(P, layer, z);
  if (n == 0.0) return z;
  const int shrink = static_cast<int>(rng.uniform(0.0, 4.0));
  Rational s = Rational(1, static_cast<long>(std::ceil(n / max_norm)) + 1);
  for (int i = 0; i < shrink; ++i) s /= 10;
  for (auto& x : z) x *= s;
  return z;
}

inline double bracket_norm(const GradedAlgebra& A, const PoppMetric& P, oracle::RandomRationals& rng, int draws) {
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    const int p = 1 + static_cast<int>(rng.uniform(0.0, A.step() - 1.0));
    const int q = 1 + static_cast<int>(rng.uniform(0.0, A.step() - p));
    if (p + q > A.step()) continue;
    std::vector<double> zp, zq;
    for (int c = 0; c < A.dim(p); ++c) zp.push_back(rng.gauss());
    for (int c = 0; c < A.dim(q); ++c) zq.push_back(rng.gauss());
    const DVec br = bracket(A, inject_layer(A, zp, p), inject_layer(A, zq, q));
    const double lhs = layer_norm(P, p + q, project_layer(A, br, p + q));
    const double rhs = std::ldexp(1.0, std::min(p, q)) * layer_norm(P, p, zp) * layer_norm(P, q, zq);
    worst = std::max(worst, lhs / rhs);
  }
  return worst;
}

inline double dcom_bound(const GradedAlgebra& A, const PoppMetric& P, oracle::RandomRationals& rng, int draws) {
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    const int j = 1 + i % A.step();
    RootContext<Radical> ctx;
    const auto z = random_layer(A, P, j, rng, 10.0);
    std::vector<Radical> zr;
    for (const auto& q : z) zr.push_back(ctx.lift(q));
    const auto set = adjust_to_layer_vector(A, P, zr, j, ctx);
    const double nu = layer_norm_of(P, j, z);
    if (nu == 0.0) continue;
    worst = std::max(worst, d_com(A, set) / dcom_layer_bound(j, A.dim(1), nu));
  }
  return worst;
}

inline double theta_bound(const GradedAlgebra& A, const PoppMetric& P, oracle::RandomRationals& rng, int draws) {
  double worst = 0.0;
  if (A.step() < 3) return worst;
  for (int i = 0; i < draws; ++i) {
    const int j = 2 + i % (A.step() - 2);
    RootContext<Radical> ctx;
    const auto z = random_layer(A, P, j, rng, 10.0);
    std::vector<Radical> zr;
    for (const auto& q : z) zr.push_back(ctx.lift(q));
    const auto set = adjust_to_layer_vector(A, P, zr, j, ctx);
    const double nu = layer_norm_of(P, j, z);
    if (nu == 0.0) continue;
    const double th = theta_canonical(j, A.dim(1), A.step());
    for (const auto& [l, a] : error_vectors_A(A, set))
      worst = std::max(worst, layer_norm_of(P, l, a) / (th * std::pow(nu, static_cast<double>(l) / j)));
  }
  return worst;
}

inline double q_bound(const GradedAlgebra& A, const PoppMetric& P, oracle::RandomRationals& rng, int draws) {
  double worst = 0.0;
  const auto qs = q_polynomials(A.dim(1), A.step());
  for (int i = 0; i < draws; ++i) {
    RootContext<Radical> ctx;
    std::vector<Radical> coords;
    std::vector<double> beta;
    for (int l = 1; l <= A.step(); ++l) {
      const auto z = random_layer(A, P, l, rng, 1.0);
      beta.push_back(std::pow(layer_norm_of(P, l, z), 1.0 / l));
      for (const auto& q : z) coords.push_back(ctx.lift(q));
    }
    const auto t = adjust_tuple(A, P, GVec<Radical>(coords), ctx);
    for (const auto& [key, b] : t.B) {
      const double lhs = layer_norm_of(P, key.first, b);
      const double rhs = qs.at(key).evaluate(beta);
      if (lhs == 0.0) continue;
      worst = std::max(worst, rhs > 0 ? lhs / rhs : INFINITY);
    }
  }
  return worst;
}

}  // namespace lemmas
