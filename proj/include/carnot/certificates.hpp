#pragma once

// Quantitative constants: distance bounds from combinatorial distance, the
// error-bound factors theta_j, the polynomials Q_{lj}, the box radii eps_i,
// and the volume and systolic constants D, C.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace carnot {

double dcc_upper_from_dcom(int k, double d);
double dcom_layer_bound(int j, int d1, double nu);
double theta(int j, int d1, int k, double beta_tilde, double gamma_tilde);
// theta with the canonical beta~, gamma~ of the coefficient tables.
double theta_canonical(int j, int d1, int k);

// Polynomial in beta_1..beta_k with nonnegative coefficients.
class QPoly {
 public:
  using Exponents = std::vector<std::uint8_t>;  // length k

  explicit QPoly(int vars = 0) : vars_(vars) {}
  static QPoly monomial(int vars, int var, int power, double coeff = 1.0);
  static QPoly constant(int vars, double c);

  int vars() const { return vars_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  double coefficient_sum() const;
  double evaluate(const std::vector<double>& beta) const;
  // Variables that occur in some monomial.
  std::vector<int> support() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator*=(double c);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator*(QPoly a, double c) { return a *= c; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  int vars_;
  std::map<Exponents, double> terms_;
};

// Q_{lj} for 1 <= j < l <= k, keyed (l, j); variables beta_1..beta_k (0-based).
std::map<std::pair<int, int>, QPoly> q_polynomials(int d1, int k);

struct RecursionLevel {
  int k = 0;
  double T = 0.0;
  double eps_hat = 0.0;
  std::vector<double> eps_tilde;
  double residual = 0.0;  // lhs - rhs of the defining inequality, <= 0
};

struct EpsilonResult {
  std::vector<double> eps;
  std::vector<RecursionLevel> trace;
};

EpsilonResult epsilon_constants(int d1, int k);

struct BoxConstants {
  std::vector<int> dims;
  std::vector<double> eps;
  int Q = 0;
  double D = 0.0;
  double C = 0.0;
  std::vector<RecursionLevel> trace;
};

BoxConstants global_constants(const std::vector<int>& dims);

}  // namespace carnot
