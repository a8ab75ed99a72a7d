#include "doctest.h"

#include <cmath>

#include "carnot/adjustment.hpp"
#include "oracles.hpp"

using namespace carnot;

namespace {

std::vector<Radical> lift(const RootContext<Radical>& ctx, const std::vector<Rational>& v) {
  std::vector<Radical> out;
  for (const auto& q : v) out.push_back(ctx.lift(q));
  return out;
}

double to_d(const Radical& x) { return x.to_double(); }

}  // namespace

TEST_CASE("heisenberg layer-2 adjustment") {
  const GradedAlgebra H = builtin_from_string("heisenberg");
  const PoppMetric P = build_popp(H);
  RootContext<Radical> ctx;
  const Rational c(3);
  const auto set = adjust_to_layer_vector(H, P, lift(ctx, {c}), 2, ctx);
  REQUIRE(set.rows.size() == 4);
  CHECK(is_zero_row(set.rows[0]));
  CHECK(is_zero_row(set.rows[3]));
  const double s = std::sqrt(1.5);
  CHECK(to_d(set.rows[1][0][0]) == doctest::Approx(s));
  CHECK(to_d(set.rows[1][1][1]) == doctest::Approx(s));
  CHECK(to_d(set.rows[2][0][1]) == doctest::Approx(-s));
  CHECK(to_d(set.rows[2][1][0]) == doctest::Approx(s));
  const AdjustCheck chk = check_adjusted(H, P, set, lift(ctx, {c}));
  CHECK(chk.sum_condition);
  CHECK(chk.nu == doctest::Approx(3 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(chk.norm_rel_error < 1e-12);
  CHECK(chk.balance_rel_error < 1e-12);
  CHECK(d_com(H, set) == doctest::Approx(4 * s));
}

TEST_CASE("zero target") {
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  RootContext<Radical> ctx;
  for (int j = 1; j <= 3; ++j) {
    const auto set = adjust_to_layer_vector(E, P, std::vector<Radical>(E.dim(j), Radical(0)), j, ctx);
    CHECK(d_com(E, set) == 0.0);
    CHECK(y_of(E, set).is_zero());
  }
}

TEST_CASE("engel layer-3 adjustment") {
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  RootContext<Radical> ctx;
  const auto set = adjust_to_layer_vector(E, P, lift(ctx, {1}), 3, ctx);
  REQUIRE(set.rows.size() == 8);
  int nonzero = 0;
  for (const auto& row : set.rows) {
    if (is_zero_row(row)) continue;
    ++nonzero;
    for (const auto& x : row) CHECK(horizontal_norm(x, 2) == doctest::Approx(std::cbrt(0.5)).epsilon(1e-14));
  }
  CHECK(nonzero == 2);
  CHECK(check_adjusted(E, P, set, lift(ctx, {1})).sum_condition);
}

TEST_CASE("adjusted conditions on random targets") {
  oracle::RandomRationals rng(31);
  for (const char* name : {"heisenberg", "engel", "heisenberg(2)", "free_nilpotent(2,3)"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    for (int j = 1; j <= A.step(); ++j)
      for (int i = 0; i < 15; ++i) {
        RootContext<Radical> ctx;
        std::vector<Rational> z;
        for (int c = 0; c < A.dim(j); ++c) z.push_back(rng.next());
        const auto zr = lift(ctx, z);
        const auto set = adjust_to_layer_vector(A, P, zr, j, ctx);
        CHECK(static_cast<int>(set.rows.size()) == (j == 1 ? A.dim(1) : static_cast<int>(std::pow(A.dim(1), j))));
        const AdjustCheck chk = check_adjusted(A, P, set, zr);
        CHECK(chk.sum_condition);
        CHECK(chk.norm_rel_error < 1e-12);
        CHECK(chk.balance_rel_error < 1e-12);
        // A_l sits above layer j, and y(S) hits Z_j in layer j
        const GVec<Radical> y = y_of(A, set);
        for (int l = 1; l < j; ++l)
          for (const auto& x : project_layer(A, y, l)) CHECK(x.is_zero());
        CHECK(project_layer(A, y, j) == zr);
      }
  }
}

TEST_CASE("float mode adjustment") {
  oracle::RandomRationals rng(32);
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  RootContext<double> ctx;
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> z{rng.next().get_d()};
    const auto set = adjust_to_layer_vector(E, P, z, 3, ctx);
    const AdjustCheck chk = check_adjusted(E, P, set, z);
    CHECK(chk.sum_condition);
    CHECK(chk.norm_rel_error < 1e-12);
  }
}

TEST_CASE("y equals Y in 2-step algebras") {
  oracle::RandomRationals rng(33);
  for (const char* name : {"heisenberg", "heisenberg(2)", "free_nilpotent(3,2)"}) {
    const GradedAlgebra A = builtin_from_string(name);
    for (int i = 0; i < 10; ++i) {
      HorizontalSet<Rational> set;
      set.layer = 2;
      for (int n = 0; n < 4; ++n) {
        std::vector<GVec<Rational>> row;
        for (int c = 0; c < 2; ++c) {
          RVec v = zero_vec<Rational>(A);
          for (int s = 0; s < A.dim(1); ++s) v[s] = rng.next();
          row.push_back(v);
        }
        set.rows.push_back(row);
      }
      CHECK(y_of(A, set) == Y_of(A, set));
      CHECK(error_vectors_A(A, set).empty());
    }
  }
}

TEST_CASE("single rows") {
  const GradedAlgebra H = builtin_from_string("heisenberg");
  HorizontalSet<Rational> one;
  one.layer = 1;
  one.rows = {{RVec(std::vector<Rational>{3, 4, 0})}};
  CHECK(y_of(H, one) == RVec(std::vector<Rational>{3, 4, 0}));
  CHECK(Y_of(H, one) == y_of(H, one));
  CHECK(d_com(H, one) == 5.0);
  HorizontalSet<Rational> comm;
  comm.layer = 2;
  comm.rows = {{basis_vec<Rational>(H, 0), basis_vec<Rational>(H, 1)}};
  CHECK(y_of(H, comm) == basis_vec<Rational>(H, 2));
  CHECK(d_com(H, comm) == 2.0);
}

TEST_CASE("engel error vectors") {
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  RootContext<Radical> ctx;
  const auto set = adjust_to_layer_vector(E, P, lift(ctx, {1}), 2, ctx);
  const auto a = error_vectors_A(E, set);
  REQUIRE(a.size() == 1);
  CHECK(a.count(3) == 1);
  const auto top = adjust_to_layer_vector(E, P, lift(ctx, {1}), 3, ctx);
  CHECK(error_vectors_A(E, top).empty());
}

TEST_CASE("adjusted tuples") {
  const GradedAlgebra H = builtin_from_string("heisenberg");
  const PoppMetric PH = build_popp(H);
  RootContext<Radical> ctx;
  const auto zero = adjust_tuple(H, PH, GVec<Radical>(3), ctx);
  CHECK(d_com_k(H, zero) == 0.0);
  for (const auto& [key, b] : zero.B)
    for (const auto& x : b) CHECK(x.is_zero());

  const GVec<Radical> z(lift(ctx, {1, 2, 5}));
  const auto t = adjust_tuple(H, PH, z, ctx);
  CHECK(t.B.at({2, 1})[0].is_zero());
  CHECK(t.adjusted_to[1] == lift(ctx, {5}));
  CHECK(t.prefixes.back() == z);
  CHECK(d_com_k(H, t) == doctest::Approx(std::sqrt(5.0) + d_com(H, t.sets[1])));

  const auto x3 = adjust_tuple(H, PH, GVec<Radical>(lift(ctx, {0, 0, 1})), ctx);
  CHECK(d_com_k(H, x3) == doctest::Approx(2 * std::sqrt(2.0)));

  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric PE = build_popp(E);
  const auto x4 = adjust_tuple(E, PE, GVec<Radical>(lift(ctx, {0, 0, 0, 1})), ctx);
  CHECK(d_com(E, x4.sets[0]) == 0.0);
  CHECK(d_com(E, x4.sets[1]) == 0.0);
  CHECK(x4.adjusted_to[2] == lift(ctx, {1}));
}

TEST_CASE("prefix property on random targets") {
  oracle::RandomRationals rng(34);
  for (const char* name : {"engel", "free_nilpotent(2,3)", "free_nilpotent(2,4)"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    for (int i = 0; i < 5; ++i) {
      RootContext<Radical> ctx;
      const GVec<Radical> z = lift_vec(ctx, rng.vec(A.dim()));
      const auto t = adjust_tuple(A, P, z, ctx);
      for (int j = 1; j <= A.step(); ++j) {
        const auto& prefix = t.prefixes[j - 1];
        for (int l = 1; l <= A.step(); ++l) {
          const auto expected = l <= j ? project_layer(A, z, l) : t.B.at({l, j});
          CHECK(project_layer(A, prefix, l) == expected);
        }
      }
      CHECK(t.prefixes.back() == z);
    }
  }
}

TEST_CASE("scaling law") {
  oracle::RandomRationals rng(35);
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  for (const Rational& t : {Rational(2), Rational(3), Rational(1, 2)}) {
    for (int j = 2; j <= 3; ++j) {
      RootContext<Radical> ctx;
      const std::vector<Rational> z{rng.next()};
      const auto set = adjust_to_layer_vector(E, P, lift(ctx, z), j, ctx);
      const auto scaled = rescale(set, ctx.lift(t));
      Rational tj = 1;
      for (int i = 0; i < j; ++i) tj *= t;
      const auto zt = lift(ctx, {tj * z[0]});
      const AdjustCheck chk = check_adjusted(E, P, scaled, zt);
      CHECK(chk.sum_condition);
      CHECK(chk.norm_rel_error < 1e-12);
      CHECK(d_com(E, scaled) == doctest::Approx(t.get_d() * d_com(E, set)).epsilon(1e-15));
      const auto direct = adjust_to_layer_vector(E, P, zt, j, ctx);
      for (std::size_t n = 0; n < set.rows.size(); ++n)
        for (int i = 0; i < j; ++i)
          for (int c = 0; c < 2; ++c)
            CHECK(direct.rows[n][i][c].to_double() ==
                  doctest::Approx(scaled.rows[n][i][c].to_double()).epsilon(1e-14));
    }
  }
}
