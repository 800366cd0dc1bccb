#include <doctest.h>

#include <cmath>

#include "skewlab/block.hpp"
#include "skewlab/ulam.hpp"

using namespace skewlab;

TEST_CASE("operator basics") {
  const UlamOperator P(2, {0.25, 0.5, 0.75, 0.5});
  CHECK(P.entry(0, 1) == 0.5);
  CHECK(P.max_column_sum_error() == doctest::Approx(0.0));
  const auto y = P.apply(std::vector<double>{1.0, 0.0});
  CHECK(y[0] == doctest::Approx(0.25));
  CHECK(y[1] == doctest::Approx(0.75));
  const auto P2 = P.power(2);
  CHECK(P2.entry(0, 0) == doctest::Approx(0.25 * 0.25 + 0.5 * 0.75));
  CHECK_THROWS_AS(UlamOperator(2, {1.0, 0.0}), RejectedInputError);
  CHECK_THROWS_AS(UlamOperator(2, {-0.1, 0.5, 1.1, 0.5}), RejectedInputError);
}

TEST_CASE("invariant density of Lebesgue-preserving bases is uniform") {
  SUBCASE("doubling map") {
    const auto rho = invariant_density_base(BaseMap::linear(2), 128);
    for (double v : rho.density()) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("gmk map, exact affine assembly") {
    const auto rho = invariant_density_base(BaseMap::gmk(5, 0.99), 200);
    for (double v : rho.density()) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("tent map") {
    const auto rho = invariant_density_base(BaseMap::tent_power(1), 128);
    for (double v : rho.density()) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("base Ulam matrices are column stochastic") {
  for (const auto& g : {BaseMap::linear(3), BaseMap::gmk(5, 0.99),
                        BaseMap::logistic_power(1)}) {
    const auto M = ulam_matrix_base(g, 64);
    CHECK(M.max_column_sum_error() < 1e-12);
  }
}

TEST_CASE("averaged fiber operator") {
  const auto rho = GridMeasure::uniform(64);
  SUBCASE("identity-plus-omega spreads every column uniformly") {
    // x + omega with omega uniform: each column is (close to) the uniform
    // distribution over all bins
    const auto f = FiberFamily::additive_identity();
    const int bins = 32;
    const auto P = build_P(f, rho, bins, 8 * bins);
    CHECK(P.max_column_sum_error() < 1e-12);
    for (int j = 0; j < bins; ++j)
      for (int i = 0; i < bins; ++i)
        CHECK(P.entry(i, j) == doctest::Approx(1.0 / bins).epsilon(1e-9));
  }
  SUBCASE("x-independent family gives identical columns") {
    const auto f = FiberFamily::custom(
        [](double w, double) { return 2.0 * w; }, 0.0, "reset");
    const int bins = 16;
    const auto P = build_P(f, rho, bins, 8 * bins);
    for (int j = 1; j < bins; ++j)
      for (int i = 0; i < bins; ++i)
        CHECK(P.entry(i, j) == doctest::Approx(P.entry(i, 0)));
  }
  SUBCASE("quadrature coarser than the grid is rejected") {
    CHECK_THROWS_AS(build_P(FiberFamily::additive_identity(), rho, 32, 16),
                    RejectedInputError);
  }
  SUBCASE("cell restriction only sees omega in the cell") {
    const auto f = FiberFamily::custom(
        [](double w, double) { return w; }, 0.0, "project");
    const auto P = build_P_cell(f, rho, {0.0, 0.25}, 16, 64);
    // every column lands entirely in bins covering [0, 0.25)
    for (int j = 0; j < 16; ++j) {
      double in_cell = 0.0;
      for (int i = 0; i < 4; ++i) in_cell += P.entry(i, j);
      CHECK(in_cell == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("stationary measure of the averaged operator") {
  const auto rho = GridMeasure::uniform(64);
  // x + omega is mixing to uniform in one application
  const auto P = build_P(FiberFamily::additive_identity(), rho, 32, 256);
  const auto eta = stationary_measure(P);
  for (double v : eta.density()) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("contraction rate estimation") {
  const auto rho = GridMeasure::uniform(64);
  SUBCASE("uniformizing operator contracts immediately") {
    const auto P = build_P(FiberFamily::additive_identity(), rho, 16, 128);
    const auto fit = contraction_rate(P, 6, 10);
    CHECK(fit.contracting);
    CHECK(fit.curve[0].second < 1e-8);
  }
  SUBCASE("identity operator does not contract") {
    std::vector<double> id(16 * 16, 0.0);
    for (int i = 0; i < 16; ++i) id[std::size_t(i) * 16 + i] = 1.0;
    const auto fit = contraction_rate(UlamOperator(16, std::move(id)), 8, 10);
    CHECK(!fit.contracting);
    CHECK(fit.lambda_hat == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& [n, r] : fit.curve) CHECK(r == doctest::Approx(1.0));
  }
}

TEST_CASE("one-step minorization of the averaged kernel") {
  const auto rho = GridMeasure::uniform(64);
  SUBCASE("x + omega covers the circle: full mass against uniform") {
    const auto res = doeblin_check(FiberFamily::additive_identity(), rho, 1, 16);
    CHECK(res.holds);
    CHECK(res.epsilon_hat == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : res.nu.density()) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("omega-independent identity fiber has no spreading") {
    const auto f = FiberFamily::custom(
        [](double, double x) { return x; }, 1.0, "identity");
    const auto res = doeblin_check(f, rho, 1, 16);
    CHECK(!res.holds);
    CHECK(res.epsilon_hat == doctest::Approx(0.0));
  }
  SUBCASE("reset branch of the forced family spreads mass in one step") {
    // for omega < 1/2 the fiber map is x -> 2*omega regardless of x, so the
    // averaged one-step kernel already has a uniform component of mass ~ 1/2
    const auto res =
        doeblin_check(FiberFamily::ns_forced(0.01, 0.001, 0.5), rho, 1, 16);
    CHECK(res.holds);
    CHECK(res.epsilon_hat > 0.3);
    CHECK(res.epsilon_hat <= 1.0 + 1e-9);
  }
}
