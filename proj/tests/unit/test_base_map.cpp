#include <doctest.h>

#include <cmath>

#include "skewlab/base_map.hpp"
#include "skewlab/rng.hpp"

using namespace skewlab;

TEST_CASE("linear base map evaluation and inverses") {
  const auto g = BaseMap::linear(2);
  CHECK(g.eval(0.3) == doctest::Approx(0.6));
  CHECK(g.branch_count() == 2);
  CHECK(g.sigma_min() == 2.0);
  CHECK(g.distortion() == 0.0);

  const auto g4 = BaseMap::linear(4);
  const auto inv = g4.inverse_branches(CirclePoint(0.2));
  REQUIRE(inv.preimages.size() == 4);
  const double expected[] = {0.05, 0.30, 0.55, 0.80};
  for (int i = 0; i < 4; ++i) {
    CHECK(inv.preimages[i].point.value() == doctest::Approx(expected[i]));
    CHECK(inv.preimages[i].abs_derivative == doctest::Approx(4.0));
  }
}

TEST_CASE("linear rejects sigma < 2") {
  CHECK_THROWS_AS(BaseMap::linear(1), RejectedInputError);
}

TEST_CASE("gmk breakpoints all map to zero") {
  const auto g = BaseMap::gmk(5, 0.99);
  CHECK(g.branch_count() == 10);
  // rounding may land just below 1.0, which is the same circle point
  for (int j = 0; j < 10; ++j)
    CHECK(circle_dist(g.eval(j / 10.0), 0.0) < 1e-12);
  CHECK(g.eval(0.099) == doctest::Approx(0.5));
  CHECK(g.sigma_min() == doctest::Approx(5.0 / 0.99));
  CHECK(g.distortion() == 0.0);
  CHECK(g.minorization_distortion() > 0.0);
}

TEST_CASE("gmk inverse branches at zero are the breakpoints") {
  const auto g = BaseMap::gmk(5, 0.99);
  const auto inv = g.inverse_branches(CirclePoint(0.0));
  REQUIRE(inv.preimages.size() == 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(inv.preimages[j].point.value() == doctest::Approx(j / 10.0));
    const double expect = j < 5 ? 5.0 / 0.99 : 5.0 / 0.01;
    CHECK(inv.preimages[j].abs_derivative == doctest::Approx(expect));
  }
}

TEST_CASE("inverse branches invert eval for the whole catalog") {
  const BaseMap maps[] = {BaseMap::linear(3), BaseMap::gmk(5, 0.99),
                          BaseMap::gmk(2, 0.3), BaseMap::tent_power(2),
                          BaseMap::logistic_power(1)};
  for (const auto& g : maps) {
    for (int t = 0; t < 1000; ++t) {
      const CirclePoint w(uniform01(5, t, 0));
      const auto inv = g.inverse_branches(w);
      CHECK(int(inv.preimages.size()) == g.branch_count());
      for (const auto& pre : inv.preimages)
        CHECK(circle_dist(g.eval(pre.point), w) < 1e-10);
    }
  }
}

TEST_CASE("gmk preserves Lebesgue measure: sum of inverse derivatives") {
  const auto g = BaseMap::gmk(7, 0.8);
  for (int t = 0; t < 200; ++t) {
    const auto inv = g.inverse_branches(CirclePoint(uniform01(6, t, 0)));
    double s = 0.0;
    for (const auto& pre : inv.preimages) s += 1.0 / pre.abs_derivative;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("tent map") {
  const auto g = BaseMap::tent_power(1);
  CHECK(g.branch_count() == 2);
  CHECK(g.eval(0.25) == doctest::Approx(0.5));
  CHECK(g.eval(0.75) == doctest::Approx(0.5));
  const auto inv = g.inverse_branches(CirclePoint(0.5));
  REQUIRE(inv.preimages.size() == 2);
  CHECK(inv.preimages[0].point.value() == doctest::Approx(0.25));
  CHECK(inv.preimages[1].point.value() == doctest::Approx(0.75));
  CHECK(inv.preimages[0].abs_derivative == doctest::Approx(2.0));
}

TEST_CASE("logistic map evaluation") {
  const auto g = BaseMap::logistic_power(1);
  CHECK(g.eval(0.5) == doctest::Approx(0.0));  // 4*(1/2)*(1/2) = 1 == 0 on T
  CHECK(g.eval(0.25) == doctest::Approx(0.75));
  CHECK(g.branch_count() == 2);
  // derivative vanishes at the critical point, so no uniform expansion
  CHECK(g.sigma_min() < 1.0);
}

TEST_CASE("boundary points evaluate through the left-closed branch") {
  const auto g = BaseMap::linear(2);
  CHECK(g.eval(0.5) == doctest::Approx(0.0));  // branch [0.5,1) starts there
  const auto inv = g.inverse_branches(CirclePoint(0.0));
  CHECK(inv.boundary_hit);
}

TEST_CASE("conjugation by the identity returns the same map") {
  const auto g = BaseMap::gmk(3, 0.6);
  const auto gc = BaseMap::conjugated(
      g, [](double x) { return x; }, [](double x) { return x; });
  for (int t = 0; t < 100; ++t) {
    const double w = uniform01(8, t, 0);
    CHECK(circle_dist(gc.eval(w), g.eval(w)) < 1e-10);
  }
}

TEST_CASE("tent conjugated by sin^2(pi x/2) is the logistic map") {
  auto h = [](double x) {
    const double s = std::sin(M_PI * x / 2.0);
    return s * s;
  };
  auto h_inv = [](double y) { return 2.0 / M_PI * std::asin(std::sqrt(y)); };
  // logistic = h o tent o h_inv
  const auto gc = BaseMap::conjugated(BaseMap::tent_power(1), h_inv, h);
  const auto logistic = BaseMap::logistic_power(1);
  for (int k = 0; k < 100; ++k) {
    const double w = (k + 0.5) / 100.0;
    CHECK(circle_dist(gc.eval(w), logistic.eval(w)) < 1e-9);
  }
}

TEST_CASE("conjugation by a rotation shifts the doubling map") {
  const auto gc = BaseMap::conjugated(
      BaseMap::linear(2), [](double x) { return wrap(x + 0.25); },
      [](double x) { return wrap(x - 0.25); });
  for (int k = 0; k < 50; ++k) {
    const double w = uniform01(9, k, 0);
    CHECK(circle_dist(gc.eval(w), wrap(2.0 * w + 0.25)) < 1e-10);
  }
}

TEST_CASE("broken conjugacy pair is rejected") {
  CHECK_THROWS_AS(BaseMap::conjugated(
                      BaseMap::linear(2), [](double x) { return x; },
                      [](double x) { return wrap(x + 0.1); }),
                  RejectedInputError);
}
