// One line per acceptance criterion; exit status is nonzero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "carnot/commands.hpp"
#include "carnot/lattice.hpp"
#include "lemma_checks.hpp"

using namespace carnot;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string data(const char* name) { return std::string(CARNOT_TEST_DATA) + "/" + name; }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// 1
Outcome bch_oracle() {
  oracle::RandomRationals rng(101);
  int bad = 0;
  struct Fixture {
    const char* name;
    std::vector<QMatrix> basis;
  };
  for (const auto& f : {Fixture{"heisenberg", oracle::heisenberg_matrices()}, Fixture{"engel", oracle::engel_matrices()}}) {
    const GradedAlgebra A = builtin_from_string(f.name);
    for (int i = 0; i < 100; ++i) {
      const RVec x = rng.vec(A.dim());
      const RVec y = rng.vec(A.dim());
      const RVec z = rng.vec(A.dim());
      if (bch_product(A, x, y) != oracle::matrix_product(x, y, f.basis)) ++bad;
      if (bch_product(A, bch_product(A, x, y), z) != bch_product(A, x, bch_product(A, y, z))) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + " mismatches over 400 checks"};
}

// Rational kernel basis of m.
QMatrix kernel(QMatrix m) {
  const std::size_t cols = m[0].size();
  q_row_reduce(m);
  std::vector<long> pivot_of(cols, -1);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (m[r][c] != 0) {
        pivot_of[c] = static_cast<long>(r);
        break;
      }
  QMatrix out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of[f] >= 0) continue;
    std::vector<Rational> k(cols, Rational(0));
    k[f] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of[c] >= 0) k[c] = -m[pivot_of[c]][f];
    out.push_back(k);
  }
  return out;
}

// 2
Outcome popp_minimality() {
  std::ostringstream detail;
  bool ok = true;
  oracle::RandomRationals rng(102);
  for (const auto& [name, layer] : {std::pair{"heisenberg", 2}, std::pair{"engel", 3}}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    std::vector<double> unit(static_cast<std::size_t>(A.dim(layer)), 0.0);
    unit.back() = 1.0;
    const double norm = layer_norm(P, layer, unit);
    std::vector<Rational> target(unit.size(), Rational(0));
    target.back() = 1;
    const double brute = oracle::least_norm(P.M[layer - 1], target);
    ok = ok && std::abs(norm - 1 / std::sqrt(2.0)) < 1e-12 && std::abs(norm - brute) < 1e-12;
    detail << name << " |top| = " << fmt(norm) << "; ";
    const std::vector<Rational> u = minimal_preimage(P, layer, target);
    Rational uu(0);
    for (const auto& x : u) uu += x * x;
    const QMatrix K = kernel(P.M[layer - 1]);
    int worse = 0;
    for (int i = 0; i < 100; ++i) {
      std::vector<Rational> w(u.size(), Rational(0));
      for (const auto& k : K) {
        const Rational c = rng.next();
        for (std::size_t c2 = 0; c2 < w.size(); ++c2) w[c2] += c * k[c2];
      }
      bool nonzero = false;
      for (const auto& x : w) nonzero = nonzero || x != 0;
      if (!nonzero) continue;
      Rational s(0);
      for (std::size_t c2 = 0; c2 < w.size(); ++c2) s += (u[c2] + w[c2]) * (u[c2] + w[c2]);
      if (s > uu) ++worse;
      else ok = false;
    }
    detail << worse << " perturbations increase the norm; ";
  }
  return {ok, detail.str()};
}

// 3
Outcome adjusted_sets() {
  oracle::RandomRationals rng(103);
  int bad = 0;
  double worst = 0.0;
  for (const char* name : {"heisenberg", "engel"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    for (int i = 0; i < 200; ++i) {
      const int j = 1 + i % A.step();
      RootContext<Radical> ctx;
      std::vector<Radical> z;
      for (int c = 0; c < A.dim(j); ++c) z.push_back(ctx.lift(rng.next()));
      const auto set = adjust_to_layer_vector(A, P, z, j, ctx);
      const AdjustCheck chk = check_adjusted(A, P, set, z);
      worst = std::max({worst, chk.norm_rel_error, chk.balance_rel_error});
      if (!chk.sum_condition || chk.norm_rel_error > 1e-12 || chk.balance_rel_error > 1e-12) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + " failures over 400 targets, worst relative error " + fmt(worst)};
}

// 4
Outcome lemma_suite() {
  oracle::RandomRationals rng(104);
  double br = 0, dc = 0, th = 0, qb = 0;
  for (const char* name : {"heisenberg", "engel", "free_nilpotent(2,3)"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    br = std::max(br, lemmas::bracket_norm(A, P, rng, 200));
    dc = std::max(dc, lemmas::dcom_bound(A, P, rng, 200));
    if (A.step() >= 3) {
      th = std::max(th, lemmas::theta_bound(A, P, rng, 200));
      qb = std::max(qb, lemmas::q_bound(A, P, rng, 200));
    }
  }
  const double tol = 1 + 1e-9;
  return {br <= tol && dc <= tol && th <= tol && qb <= tol,
          "max ratios: bracket " + fmt(br) + ", d_com " + fmt(dc) + ", theta " + fmt(th) + ", Q " + fmt(qb)};
}

// 5
Outcome ball_box() {
  bool ok = true;
  std::ostringstream detail;
  const BoxConstants h = global_constants({2, 1});
  ok = ok && h.eps == std::vector<double>{0.5, 1.0 / 512};
  for (const auto& [name, n] : {std::pair{"heisenberg", 1000}, std::pair{"heisenberg(2)", 500}, std::pair{"engel", 200}}) {
    CommandOptions o;
    o.algebra = name;
    o.samples = n;
    o.seed = 5;
    const auto r = cmd_box_verify(o);
    ok = ok && r["pass"].get<bool>();
    detail << name << " max length " << fmt(r["max_bound"].get<double>()) << "; ";
  }
  return {ok, detail.str()};
}

// 6
Outcome path_certificates() {
  oracle::RandomRationals rng(106);
  int bad = 0;
  for (const char* name : {"heisenberg", "engel"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    for (int i = 0; i < 200; ++i) {
      RootContext<Radical> ctx;
      const XVec z = lift_vec(ctx, rng.vec(A.dim()));
      const auto c = certified_dcc_upper(A, P, z, ctx);
      if (!(c.path.endpoint - z).is_zero() || c.bound > dcc_upper_from_dcom(A.step(), c.d_com) * (1 + 1e-12)) ++bad;
    }
  }
  int counts[3] = {0, 0, 0};
  for (const auto& l : word_of_commutator(3)) ++counts[l.position];
  const bool letters = counts[0] == 2 && counts[1] == 4 && counts[2] == 4;
  return {bad == 0 && letters, std::to_string(bad) + " failures over 400 targets; j=3 letters " +
                                   std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
                                   std::to_string(counts[2])};
}

// 7
Outcome homogeneity() {
  double worst = 0.0;
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  const BoxConstants B = global_constants(E.dims());
  oracle::RandomRationals rng(107);
  for (const Rational t : {Rational(2), Rational(3), Rational(1, 2)}) {
    const double td = t.get_d();
    std::vector<double> radii;
    for (std::size_t i = 0; i < B.eps.size(); ++i) radii.push_back(std::pow(td, i + 1.0) * B.eps[i]);
    const double v = popp_box_volume(radii, E.dims());
    const double expect = std::pow(td, B.Q) * popp_box_volume(B.eps, E.dims());
    worst = std::max(worst, std::abs(v - expect) / expect);
    for (int j = 1; j <= E.step(); ++j) {
      RVec z = zero_vec<Rational>(E);
      for (int c = 0; c < E.dim(j); ++c) z[E.offset(j) + c] = rng.next();
      RootContext<Radical> c1, c2;
      const double base = certified_dcc_upper(E, P, lift_vec(c1, z), c1).bound;
      const double scaled = certified_dcc_upper(E, P, lift_vec(c2, dilate(E, t, z)), c2).bound;
      worst = std::max(worst, std::abs(scaled - td * base) / (td * base));
    }
  }
  return {worst <= 1e-12, "worst relative deviation " + fmt(worst)};
}

// 8
Outcome systolic() {
  const Lattice L = load_lattice_file(data("heisenberg_lattice.json"));
  const GradedAlgebra H = lattice_algebra(L);
  const PoppMetric P = build_popp(H);
  const BoxConstants B = global_constants(H.dims());
  const SystoleReport r = check_systolic_inequality(H, L, P, B, 2);
  const double rhs = B.C * std::pow(1 / std::sqrt(2.0), 0.25);
  bool ok = r.systole.best.upper == 1.0 && r.systole.best.lower == 1.0 &&
            std::abs(r.vol - 1 / std::sqrt(2.0)) < 1e-12 && std::abs(r.rhs - rhs) < 1e-6 &&
            std::abs(r.rhs - 7.79) < 5e-3 && r.satisfied;
  const Lattice EL = load_lattice_file(data("engel_lattice.json"));
  const GradedAlgebra E = lattice_algebra(EL);
  const SystoleReport re = check_systolic_inequality(E, EL, build_popp(E), global_constants(E.dims()), 2);
  ok = ok && re.satisfied;
  const double ratio = r.systole.best.upper / r.rhs;
  double drift = 0.0;
  for (const Rational t : {Rational(2), Rational(3), Rational(1, 2)}) {
    const SystoleReport d = check_systolic_inequality(H, dilate_lattice(H, L, t), P, B, 2);
    drift = std::max(drift, std::abs(d.systole.best.upper / d.rhs - ratio) / ratio);
  }
  ok = ok && drift <= 1e-9;
  return {ok, "heisenberg sys_ub " + fmt(r.systole.best.upper) + " rhs " + fmt(r.rhs) + "; engel ratio " +
                  fmt(re.systole.best.upper / re.rhs) + "; scaling drift " + fmt(drift)};
}

// 9
Outcome covolume_oracle() {
  const Lattice L = load_lattice_file(data("heisenberg_lattice.json"));
  const GradedAlgebra H = lattice_algebra(L);
  const PoppMetric P = build_popp(H);
  std::vector<DVec> basis;
  for (const auto& b : L.malcev_basis) basis.push_back(convert<double>(b));
  // Fundamental domain {exp(s1 Y1) exp(s2 Y2) exp(s3 Y3) : s in [0,1)^3} inside this box.
  const double lo[3] = {-0.25, -0.25, -1.0};
  const double hi[3] = {1.25, 1.25, 2.5};
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 1000000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    DVec x(3);
    for (int c = 0; c < 3; ++c) x[c] = lo[c] + (hi[c] - lo[c]) * u(rng);
    bool in = true;
    for (std::size_t b = 0; b < basis.size() && in; ++b) {
      const int lead = static_cast<int>(b);
      const double s = x[lead] / basis[b][lead];
      in = s >= 0.0 && s < 1.0;
      x = bch_product(H, (-s) * basis[b], x);
    }
    inside += in;
  }
  const double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  const double estimate = box * inside / n * P.density;
  const double exact = covolume(H, L, P);
  const double rel = std::abs(estimate - exact) / exact;
  return {rel <= 0.05, "estimate " + fmt(estimate) + " vs covolume " + fmt(exact)};
}

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10
Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "carnot_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands = {
      "--algebra engel algebra check",
      "--algebra engel popp gram",
      "constants --dims 2,1,1",
      "--algebra engel adjust --target 1,2,3,4",
      "--algebra engel adjust --target 1 --layer 3",
      "--algebra engel path --target 1,-1,1/2,3",
      "--algebra engel --seed 11 box-verify --samples 20",
      "--algebra heisenberg --mode float --seed 11 box-verify --samples 50",
      "systole --lattice " + data("heisenberg_lattice.json") + " --radius 2",
      "bch tables --k 4 --N 3",
  };
  int differ = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const auto out = dir / ("run" + std::to_string(i) + "_" + std::to_string(r) + ".json");
      const auto csv = dir / ("run" + std::to_string(i) + "_" + std::to_string(r) + ".csv");
      const std::string cmd = std::string(CARNOT_CLI) + " " + commands[i] + " --out " + out.string() + " --csv " +
                              csv.string() + " 2>/dev/null";
      const int raw = std::system(cmd.c_str());
      if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) return {false, "command failed: " + commands[i]};
      runs[r] = read_file(out.string());
      if (std::filesystem::exists(csv)) runs[r] += read_file(csv.string());
    }
    if (runs[0] != runs[1] || runs[0].empty()) ++differ;
  }
  return {differ == 0, std::to_string(differ) + " of " + std::to_string(commands.size()) + " commands differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"BCH product matches matrix oracle and is associative", bch_oracle},
      {"induced norms are minimal", popp_minimality},
      {"adjusted sets satisfy their conditions", adjusted_sets},
      {"quantitative lemmas hold on random draws", lemma_suite},
      {"every box sample gets a path of length at most 1", ball_box},
      {"path certificates are exact and within the d_com bound", path_certificates},
      {"dilation homogeneity", homogeneity},
      {"systolic inequality reports", systolic},
      {"Monte Carlo covolume", covolume_oracle},
      {"CLI reports are deterministic", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
