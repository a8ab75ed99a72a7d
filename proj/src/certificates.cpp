#include "carnot/certificates.hpp"

#include <cmath>
#include <sstream>

#include "carnot/bch.hpp"
#include "carnot/error.hpp"
#include "carnot/popp.hpp"

namespace carnot {

double dcc_upper_from_dcom(int k, double d) { return std::ldexp(d, k - 1); }

double dcom_layer_bound(int j, int d1, double nu) {
  if (nu <= 0) return 0.0;
  return j * std::pow(d1, (2.0 * j - 1.0) / 2.0) * std::pow(nu, 1.0 / j);
}

double theta(int j, int d1, int k, double beta_tilde, double gamma_tilde) {
  return std::pow(8.0, k) * std::pow(static_cast<double>(d1), static_cast<double>(j) * k) * beta_tilde *
         std::pow(gamma_tilde, k);
}

double theta_canonical(int j, int d1, int k) {
  const MaxCoeffs m = max_coeff_constants(d1, j, k);
  return theta(j, d1, k, m.beta.get_d(), m.gamma.get_d());
}

QPoly QPoly::monomial(int vars, int var, int power, double coeff) {
  QPoly p(vars);
  Exponents e(static_cast<std::size_t>(vars), 0);
  e[var] = static_cast<std::uint8_t>(power);
  if (coeff != 0.0) p.terms_.emplace(std::move(e), coeff);
  return p;
}

QPoly QPoly::constant(int vars, double c) {
  QPoly p(vars);
  if (c != 0.0) p.terms_.emplace(Exponents(static_cast<std::size_t>(vars), 0), c);
  return p;
}

double QPoly::coefficient_sum() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

double QPoly::evaluate(const std::vector<double>& beta) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= std::pow(beta.at(i), e[i]);
    s += t;
  }
  return s;
}

std::vector<int> QPoly::support() const {
  std::vector<bool> used(static_cast<std::size_t>(vars_), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) used[i] = true;
  std::vector<int> out;
  for (int i = 0; i < vars_; ++i)
    if (used[i]) out.push_back(i);
  return out;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] += c;
  return *this;
}

QPoly& QPoly::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
  } else {
    for (auto& [e, x] : terms_) x *= c;
  }
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.vars_, b.vars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      QPoly::Exponents e(static_cast<std::size_t>(out.vars_), 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = static_cast<std::uint8_t>(e[i] + ea[i]);
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
      out.terms_[e] += ca * cb;
    }
  return out;
}

std::string QPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) out << "*b" << i + 1 << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return out.str();
}

namespace {

// Compositions of `total` into `parts` positive integers.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int m = 1; m <= total - (parts - 1); ++m) {
    cur.push_back(m);
    compositions(total - m, parts - 1, cur, out);
    cur.pop_back();
  }
}

// Norm factor of a right-nested bracket of layers m_1..m_q.
double bracket_factor(const std::vector<int>& m) {
  double f = 1.0;
  int tail = 0;
  for (std::size_t i = m.size(); i-- > 0;) {
    if (i + 1 < m.size()) f *= std::ldexp(1.0, std::min(m[i], tail));
    tail += m[i];
  }
  return f;
}

}  // namespace

std::map<std::pair<int, int>, QPoly> q_polynomials(int d1, int k) {
  std::map<std::pair<int, int>, QPoly> q;
  if (k < 2) return q;
  for (int l = 2; l <= k; ++l) q.emplace(std::make_pair(l, 1), QPoly(k));
  const auto alpha = beta_table(2, k);
  for (int j = 1; j + 1 < k; ++j) {
    const int next = j + 1;
    const double th = theta_canonical(next, d1, k);
    const QPoly w = QPoly::monomial(k, next - 1, next) + q.at({next, j});
    QPoly linear = QPoly::constant(k, std::pow(w.coefficient_sum(), 1.0 / next));
    QPoly vars_sum(k);
    for (int v : w.support()) vars_sum += QPoly::monomial(k, v, 1);
    linear = linear * vars_sum;
    std::vector<QPoly> lpow{QPoly::constant(k, 1.0)};
    for (int m = 1; m <= k; ++m) lpow.push_back(lpow.back() * linear);

    auto slot = [&](int letter, int m) -> QPoly {
      if (letter == 1) return m <= j ? QPoly::monomial(k, m - 1, m) : q.at({m, j});
      if (m <= j) return QPoly(k);
      if (m == next) return w;
      return lpow[m] * th;
    };

    for (int l = next + 1; l <= k; ++l) {
      QPoly out = slot(1, l) + slot(2, l);
      for (const auto& e : alpha->entries) {
        const int len = static_cast<int>(e.idx.size());
        if (len > l) continue;
        const double c = std::abs(e.coeff.get_d());
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(l, len, cur, comps);
        for (const auto& m : comps) {
          QPoly term = QPoly::constant(k, c * bracket_factor(m));
          for (int i = 0; i < len && !term.empty(); ++i) term = term * slot(e.idx[i], m[i]);
          out += term;
        }
      }
      q.emplace(std::make_pair(l, next), std::move(out));
    }
  }
  return q;
}

namespace {

template <class F>
double largest_feasible(double hi, F feasible) {
  if (feasible(hi)) return hi;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return lo;
}

RecursionLevel recursion_level(int d1, int m, const std::vector<double>& eps_tilde) {
  RecursionLevel level;
  level.k = m;
  level.eps_tilde = eps_tilde;
  const QPoly qpoly = q_polynomials(d1, m).at({m, m - 1});
  const double cm = m * std::pow(d1, (2.0 * m - 1.0) / 2.0);
  auto q_at = [&](double t) {
    std::vector<double> beta(static_cast<std::size_t>(m), 0.0);
    for (int i = 1; i < m; ++i) beta[i - 1] = t * std::pow(eps_tilde[i - 1], 1.0 / i);
    return qpoly.evaluate(beta);
  };
  const double half_budget = std::ldexp(1.0, -m);
  level.T = largest_feasible(0.25, [&](double t) { return cm * std::pow(q_at(t), 1.0 / m) <= 0.5 * half_budget; });
  if (!(level.T > 0)) throw Error(ErrorKind::RecursionFailure, "no positive T at level " + std::to_string(m));
  const double q = q_at(level.T);
  level.eps_hat = largest_feasible(1.0, [&](double e) { return cm * std::pow(e + q, 1.0 / m) <= half_budget; });
  if (!(level.eps_hat > 0))
    throw Error(ErrorKind::RecursionFailure, "no positive eps_hat at level " + std::to_string(m));
  level.residual = level.T / std::ldexp(1.0, m - 2) + cm * std::pow(level.eps_hat + q, 1.0 / m) -
                   std::ldexp(1.0, 1 - m);
  return level;
}

}  // namespace

EpsilonResult epsilon_constants(int d1, int k) {
  if (d1 < 1 || k < 1) throw Error(ErrorKind::UnsupportedParams, "constants need d1 >= 1 and k >= 1");
  EpsilonResult out;
  const double d1_cubed = std::pow(static_cast<double>(d1), 3);
  if (k == 1) {
    out.eps = {1.0};
    return out;
  }
  if (k == 2) {
    out.eps = {0.5, 1.0 / (64.0 * d1_cubed)};
    return out;
  }
  // Chain with d_com^(2) <= 1/2 as the induction base.
  std::vector<double> eps{0.25, 1.0 / (64.0 * d1_cubed)};
  for (int m = 3; m <= k; ++m) {
    RecursionLevel level = recursion_level(d1, m, eps);
    std::vector<double> next;
    for (int i = 1; i < m; ++i) next.push_back(std::pow(level.T, i) * eps[i - 1]);
    next.push_back(level.eps_hat);
    eps = std::move(next);
    out.trace.push_back(std::move(level));
  }
  out.eps = std::move(eps);
  return out;
}

BoxConstants global_constants(const std::vector<int>& dims) {
  if (dims.empty()) throw Error(ErrorKind::UnsupportedParams, "empty dims");
  BoxConstants b;
  b.dims = dims;
  EpsilonResult e = epsilon_constants(dims[0], static_cast<int>(dims.size()));
  b.eps = std::move(e.eps);
  b.trace = std::move(e.trace);
  double log_d = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    b.Q += static_cast<int>(i + 1) * dims[i];
    log_d += dims[i] * std::log(b.eps[i]) + std::log(omega(dims[i]));
  }
  b.D = std::exp(log_d);
  b.C = 2.0 * std::exp(-log_d / b.Q);
  return b;
}

}  // namespace carnot
