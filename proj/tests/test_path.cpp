#include "doctest.h"

#include <cmath>

#include "carnot/certificates.hpp"
#include "carnot/path.hpp"
#include "oracles.hpp"

using namespace carnot;

namespace {

int count_position(const std::vector<Letter>& w, int pos) {
  int n = 0;
  for (const auto& l : w) n += l.position == pos;
  return n;
}

XVec lift_target(const RootContext<Radical>& ctx, const RVec& v) { return lift_vec(ctx, v); }

}  // namespace

TEST_CASE("commutator words") {
  const auto w1 = word_of_commutator(1);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].sign == 1);
  CHECK(word_of_commutator(2).size() == 4);
  const auto w3 = word_of_commutator(3);
  CHECK(w3.size() == 10);
  CHECK(count_position(w3, 0) == 2);
  CHECK(count_position(w3, 1) == 4);
  CHECK(count_position(w3, 2) == 4);
  for (int j = 1; j <= 5; ++j) {
    const auto w = word_of_commutator(j);
    int total = 0;
    for (const auto& l : w) total += l.sign;
    CHECK(total == (j == 1 ? 1 : 0));
  }
}

TEST_CASE("heisenberg fixtures") {
  const GradedAlgebra H = builtin_from_string("heisenberg");
  const PoppMetric P = build_popp(H);
  RootContext<Radical> ctx;

  const auto c1 = certified_dcc_upper(H, P, lift_target(ctx, RVec({1, 0, 0})), ctx);
  CHECK(c1.path.segments.size() == 1);
  CHECK(c1.bound == doctest::Approx(1.0));

  const auto c3 = certified_dcc_upper(H, P, lift_target(ctx, RVec({0, 0, 1})), ctx);
  CHECK(c3.path.segments.size() == 8);
  CHECK(c3.bound == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c3.d_com == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c3.bound <= dcc_upper_from_dcom(2, c3.d_com) * (1 + 1e-12));

  const auto c0 = certified_dcc_upper(H, P, zero_vec<Radical>(H), ctx);
  CHECK(c0.path.segments.empty());
  CHECK(c0.bound == 0.0);
}

TEST_CASE("exact endpoints on random targets") {
  oracle::RandomRationals rng(7);
  for (const char* name : {"heisenberg", "engel", "heisenberg(2)", "free_nilpotent(2,3)"}) {
    const GradedAlgebra A = builtin_from_string(name);
    const PoppMetric P = build_popp(A);
    for (int i = 0; i < 15; ++i) {
      RootContext<Radical> ctx;
      const XVec z = lift_target(ctx, rng.vec(A.dim()));
      const auto c = certified_dcc_upper(A, P, z, ctx);
      CHECK((c.path.endpoint - z).is_zero());
      CHECK(c.bound <= dcc_upper_from_dcom(A.step(), c.d_com) * (1 + 1e-12));
      CHECK(dcc_lower_bound(A, z) <= c.bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("float mode agrees") {
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  oracle::RandomRationals rng(8);
  for (int i = 0; i < 10; ++i) {
    const RVec z = rng.vec(E.dim());
    RootContext<Radical> xc;
    RootContext<double> dc;
    const auto exact = certified_dcc_upper(E, P, lift_vec(xc, z), xc);
    const auto approx = certified_dcc_upper(E, P, lift_vec(dc, z), dc);
    CHECK(approx.bound == doctest::Approx(exact.bound).epsilon(1e-9));
  }
}

TEST_CASE("dilation scales single-layer path length") {
  const GradedAlgebra E = builtin_from_string("engel");
  const PoppMetric P = build_popp(E);
  oracle::RandomRationals rng(9);
  for (int j = 1; j <= 3; ++j) {
    RVec z = zero_vec<Rational>(E);
    for (int c = 0; c < E.dim(j); ++c) z[E.offset(j) + c] = rng.next();
    RootContext<Radical> ctx;
    const double base = certified_dcc_upper(E, P, lift_vec(ctx, z), ctx).bound;
    for (const Rational t : {Rational(2), Rational(3), Rational(1, 2)}) {
      RootContext<Radical> c2;
      const double scaled = certified_dcc_upper(E, P, lift_vec(c2, dilate(E, t, z)), c2).bound;
      CHECK(scaled == doctest::Approx(t.get_d() * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("non-horizontal segment rejected") {
  const GradedAlgebra H = builtin_from_string("heisenberg");
  CHECK_THROWS_AS(path_from_segments(H, std::vector<DVec>{DVec({0.0, 0.0, 1.0})}), Error);
}
