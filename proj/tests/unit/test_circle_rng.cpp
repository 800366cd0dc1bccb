#include <doctest.h>

#include "skewlab/circle.hpp"
#include "skewlab/rng.hpp"

using namespace skewlab;

TEST_CASE("wrap maps into [0,1)") {
  CHECK(wrap(0.0) == 0.0);
  CHECK(wrap(1.0) == 0.0);
  CHECK(wrap(-0.25) == doctest::Approx(0.75));
  CHECK(wrap(2.75) == doctest::Approx(0.75));
  CHECK(wrap(-1e-18) >= 0.0);
  CHECK(wrap(-1e-18) < 1.0);
}

TEST_CASE("geodesic distance on the circle") {
  CHECK(circle_dist(0.1, 0.9) == doctest::Approx(0.2));
  CHECK(circle_dist(0.0, 0.5) == doctest::Approx(0.5));
  CHECK(circle_dist(0.3, 0.3) == 0.0);
  // symmetry and triangle inequality on a sample
  for (int i = 0; i < 50; ++i) {
    double a = uniform01(1, i, 0), b = uniform01(1, i, 1), c = uniform01(1, i, 2);
    CHECK(circle_dist(a, b) == doctest::Approx(circle_dist(b, a)));
    CHECK(circle_dist(a, c) <= circle_dist(a, b) + circle_dist(b, c) + 1e-12);
    CHECK(circle_dist(a, b) <= kCircleDiameter);
  }
}

TEST_CASE("counter RNG is a pure function of its address") {
  CHECK(uniform01(7, 3, 11, 0) == uniform01(7, 3, 11, 0));
  CHECK(uniform01(7, 3, 11, 0) != uniform01(7, 3, 11, 1));
  CHECK(uniform01(7, 3, 11, 0) != uniform01(8, 3, 11, 0));
  for (int i = 0; i < 1000; ++i) {
    double u = uniform01(42, i, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("counter RNG looks uniform at coarse resolution") {
  int counts[10] = {0};
  const int n = 20000;
  for (int i = 0; i < n; ++i) counts[int(uniform01(9, i, 0) * 10)]++;
  for (int b = 0; b < 10; ++b) {
    CHECK(counts[b] > n / 10 - 400);
    CHECK(counts[b] < n / 10 + 400);
  }
}
