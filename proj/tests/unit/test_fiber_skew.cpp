#include <doctest.h>

#include "skewlab/rng.hpp"
#include "skewlab/skew.hpp"

using namespace skewlab;

TEST_CASE("ns_forced fiber family") {
  const auto f = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  // reset branch: constant in x, equal to 2*omega
  CHECK(f.eval(0.25, 0.7) == doctest::Approx(0.5));
  CHECK(f.eval(0.25, 0.1) == doctest::Approx(0.5));
  CHECK(f.constant_in_x(0.25));
  CHECK(!f.constant_in_x(0.75));
  // drift branch: phi(x) + a*omega
  CHECK(f.eval(0.75, 0.0) == doctest::Approx(0.00075));
  CHECK(f.lipschitz() == doctest::Approx(2.0));
  for (int t = 0; t < 100; ++t) {
    const double w = 0.5 * uniform01(3, t, 0);
    CHECK(f.eval(w, uniform01(3, t, 1)) ==
          doctest::Approx(f.eval(w, uniform01(3, t, 2))));
  }
}

TEST_CASE("additive identity fiber") {
  const auto f = FiberFamily::additive_identity();
  CHECK(f.eval(0.4, 0.8) == doctest::Approx(0.2));
  CHECK(f.lipschitz() == 1.0);
}

TEST_CASE("skew step uses the pre-step base coordinate") {
  const SkewProduct F{BaseMap::linear(2), FiberFamily::additive_identity()};
  const auto s = F.step({CirclePoint(0.3), CirclePoint(0.1)});
  CHECK(s.first.value() == doctest::Approx(0.6));
  CHECK(s.second.value() == doctest::Approx(0.4));
}

TEST_CASE("orbit") {
  const SkewProduct F{BaseMap::linear(2), FiberFamily::additive_identity()};
  SUBCASE("length zero") {
    const auto o = orbit(F, {CirclePoint(0.3), CirclePoint(0.1)}, 0);
    REQUIRE(o.size() == 1);
    CHECK(o[0].first.value() == doctest::Approx(0.3));
  }
  SUBCASE("fixed point at the origin") {
    const auto o = orbit(F, {CirclePoint(0.0), CirclePoint(0.0)}, 3);
    for (const auto& s : o) {
      CHECK(s.first.value() == 0.0);
      CHECK(s.second.value() == 0.0);
    }
  }
  SUBCASE("hand-iterated values") {
    const auto o = orbit(F, {CirclePoint(0.1), CirclePoint(0.0)}, 2);
    CHECK(o[1].first.value() == doctest::Approx(0.2));
    CHECK(o[1].second.value() == doctest::Approx(0.1));
    CHECK(o[2].first.value() == doctest::Approx(0.4));
    CHECK(o[2].second.value() == doctest::Approx(0.3));
  }
  SUBCASE("bitwise deterministic") {
    const auto a = orbit(F, {CirclePoint(0.123), CirclePoint(0.456)}, 50);
    const auto b = orbit(F, {CirclePoint(0.123), CirclePoint(0.456)}, 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].first.value() == b[i].first.value());
      CHECK(a[i].second.value() == b[i].second.value());
    }
  }
}

TEST_CASE("estimated system constants") {
  SUBCASE("linear base") {
    const auto c = estimate_constants(
        {BaseMap::linear(16), FiberFamily::additive_identity()}, 64);
    CHECK(c.sigma_hat == 16.0);
    CHECK(c.D_hat == 0.0);
    CHECK(c.L_hat == 1.0);
  }
  SUBCASE("gmk base") {
    const auto c = estimate_constants(
        {BaseMap::gmk(5, 0.99), FiberFamily::ns_forced(0.01, 0.001, 0.5)}, 64);
    CHECK(c.sigma_hat == doctest::Approx(5.0 / 0.99));
    CHECK(c.D_hat == 0.0);
    CHECK(c.L_hat == doctest::Approx(2.0));
  }
  SUBCASE("custom fiber sampled constants") {
    const auto f = FiberFamily::custom(
        [](double w, double x) { return x + w; }, 1.0, "shift");
    const auto c =
        estimate_constants({BaseMap::linear(2), f}, 100);
    CHECK(c.L_hat == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("grid too small is rejected") {
    CHECK_THROWS_AS(estimate_constants(
                        {BaseMap::linear(2), FiberFamily::additive_identity()}, 5),
                    RejectedInputError);
  }
}
