#include <doctest.h>

#include <cmath>

#include "skewlab/block.hpp"

using namespace skewlab;

TEST_CASE("block operator for the doubling map with the shift fiber") {
  const auto L =
      build_blockL(BaseMap::linear(2), FiberFamily::additive_identity(), 32, 64);
  REQUIRE(L.d == 2);
  CHECK(L.cells[0].first == doctest::Approx(0.0));
  CHECK(L.cells[0].second == doctest::Approx(0.5));
  for (int j = 0; j < 2; ++j) CHECK(L.rho_bar[j] == doctest::Approx(0.5));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(L.weight(i, j) == doctest::Approx(0.5));
  CHECK(L.minorization_p() == doctest::Approx(1.0));
}

TEST_CASE("linear base: every coupling weight equals 1/sigma") {
  for (int sigma : {3, 4, 8}) {
    const auto L = build_blockL(BaseMap::linear(sigma),
                                FiberFamily::additive_identity(), 16, 32);
    REQUIRE(L.d == sigma);
    for (int i = 0; i < sigma; ++i)
      for (int j = 0; j < sigma; ++j)
        CHECK(L.weight(i, j) == doctest::Approx(1.0 / sigma));
    CHECK(L.minorization_p() == doctest::Approx(1.0));
  }
}

TEST_CASE("gmk base: stochastic rows and positive coupling mass") {
  const auto L = build_blockL(BaseMap::gmk(5, 0.99),
                              FiberFamily::ns_forced(0.01, 0.001, 0.5), 32, 64);
  REQUIRE(L.d == 10);
  double rho_sum = 0.0;
  for (double v : L.rho_bar) rho_sum += v;
  CHECK(rho_sum == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 0; i < L.d; ++i) {
    double row = 0.0;
    for (int j = 0; j < L.d; ++j) row += L.weight(i, j);
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double p = L.minorization_p();
  CHECK(p > 0.0);
  CHECK(p <= 1.0 + 1e-12);
  // uneven branch widths force p well below the linear-base value 1
  CHECK(p < 0.5);
}

TEST_CASE("fixed point of the block operator") {
  SUBCASE("doubling map with the shift fiber settles to uniform") {
    const auto L = build_blockL(BaseMap::linear(2),
                                FiberFamily::additive_identity(), 32, 64);
    const auto fp = fixed_point_blockL(L);
    REQUIRE(int(fp.components.size()) == 2);
    for (double v : fp.averaged.density())
      CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
    // fixed point is consistent under one more application
    const auto again = blockL_apply(L, fp.components);
    for (int i = 0; i < 2; ++i)
      CHECK(tv_distance(again[i], fp.components[i]) < 1e-9);
  }
  SUBCASE("forced family concentrates mass near the attracting point") {
    // strong drift (c = 0.1) so the bin resolution can represent it
    const auto L = build_blockL(BaseMap::linear(4),
                                FiberFamily::ns_forced(0.1, 0.001, 0.5), 128, 128);
    const auto fp = fixed_point_blockL(L);
    const auto& eta = fp.averaged;
    // compare mass near the attracting fixed point x = 0 against the band
    // around the repelling one at x = 1/2
    double near0 = 0.0, near_half = 0.0;
    for (int b = 0; b < eta.bins(); ++b) {
      const double c = eta.bin_center(b);
      if (circle_dist(c, 0.0) < 0.1) near0 += eta.mass(b);
      if (circle_dist(c, 0.5) < 0.1) near_half += eta.mass(b);
    }
    CHECK(near0 > near_half);
  }
}

TEST_CASE("closed-form constants") {
  SUBCASE("zero distortion") {
    const auto b = theoretical_bounds(2.0, 0.5, 0.0);
    CHECK(b.a0 == 0.0);
    CHECK(b.C_a0 == 1.0);
    CHECK(b.ell0_nodist == doctest::Approx(1.0 / 3.0));
    CHECK(b.ell0_general == doctest::Approx(5.0 / 3.0));
    CHECK(b.p_bound == 1.0);
  }
  SUBCASE("hand-computed distorted case") {
    const auto b = theoretical_bounds(10.0, 0.5, 0.1);
    CHECK(b.a0 == doctest::Approx(1.0 / 9.0));
    CHECK(b.C_a0 == doctest::Approx(1.1175190687418637));
    CHECK(b.ell0_general == doctest::Approx(1.3466010269642631));
    CHECK(b.p_bound == doctest::Approx(0.8051980097166849));
  }
  SUBCASE("expansion too weak for the Lipschitz radius") {
    const auto b = theoretical_bounds(2.0, 2.0, 0.0);
    CHECK(std::isinf(b.ell0_nodist));
    CHECK(std::isinf(b.ell0_general));
  }
  SUBCASE("invalid constants are rejected") {
    CHECK_THROWS_AS(theoretical_bounds(1.0, 0.5, 0.0), RejectedInputError);
    CHECK_THROWS_AS(theoretical_bounds(2.0, -0.5, 0.0), RejectedInputError);
  }
}
