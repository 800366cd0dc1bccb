#include <doctest.h>

#include <cmath>

#include "skewlab/experiments.hpp"

using namespace skewlab;

TEST_CASE("observable catalog") {
  const auto cos2 = observable("cos2pi");
  CHECK(cos2.f(0.0) == doctest::Approx(1.0));
  CHECK(cos2.f(0.5) == doctest::Approx(-1.0));
  CHECK(cos2.lipschitz == doctest::Approx(2.0 * M_PI));
  CHECK(cos2.l1_norm == doctest::Approx(2.0 / M_PI));
  CHECK(!cos2.is_constant);

  const auto d0 = observable("dist0");
  CHECK(d0.f(0.9) == doctest::Approx(0.1));
  CHECK(d0.lipschitz == 1.0);
  CHECK(d0.l1_norm == doctest::Approx(0.25));

  const auto sgn = observable("sign");
  CHECK(sgn.f(0.2) == 1.0);
  CHECK(sgn.f(0.7) == -1.0);
  CHECK(!sgn.is_lipschitz);

  CHECK(observable("one").is_constant);
  CHECK_THROWS_AS(observable("nope"), RejectedInputError);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), RejectedInputError);
  cfg.samples = 10;
  cfg.phi = "bogus";
  CHECK_THROWS_AS(cfg.validate(), RejectedInputError);
}

TEST_CASE("initial clouds") {
  SUBCASE("uniform product cloud is stratified in omega") {
    const auto cloud = uniform_product_cloud(100, 3);
    double total = 0.0;
    for (int k = 0; k < 100; ++k) {
      CHECK(cloud[k].omega >= k / 100.0);
      CHECK(cloud[k].omega < (k + 1) / 100.0);
      total += cloud[k].weight;
    }
    CHECK(total == doctest::Approx(1.0));
  }
  SUBCASE("delta cloud pins the fiber coordinate") {
    for (const auto& s : product_delta_cloud(50, 0.3, 3))
      CHECK(s.x == doctest::Approx(0.3));
  }
  SUBCASE("drifting slice cloud with zero width is exactly on the line") {
    for (const auto& s : drifting_slice_cloud(50, 0.2, 0.0, 3))
      CHECK(s.x == doctest::Approx(0.2 * s.omega));
  }
  SUBCASE("iterating matches the pointwise orbit") {
    const SkewProduct F{BaseMap::linear(2), FiberFamily::additive_identity()};
    auto cloud = uniform_product_cloud(10, 5);
    const auto expect = orbit(F, {CirclePoint(cloud[3].omega),
                                  CirclePoint(cloud[3].x)}, 4)[4];
    cloud = iterate_cloud(F, std::move(cloud), 4, 5);
    CHECK(cloud[3].omega == doctest::Approx(expect.first.value()));
    CHECK(cloud[3].x == doctest::Approx(expect.second.value()));
  }
}

TEST_CASE("correlation curve") {
  SUBCASE("constant observables cancel exactly") {
    ExperimentConfig cfg;
    cfg.phi = cfg.psi = "one";
    cfg.samples = 100;
    cfg.steps = 10;
    cfg.fiber_bins = 32;
    const auto curve = correlation_curve(cfg);
    REQUIRE(int(curve.points.size()) == 11);
    for (const auto& p : curve.points) CHECK(p.value == 0.0);
  }
  SUBCASE("non-Lipschitz phi is refused") {
    ExperimentConfig cfg;
    cfg.phi = "sign";
    CHECK_THROWS_AS(correlation_curve(cfg), RejectedInputError);
  }
  SUBCASE("uniformizing system decorrelates in one step") {
    ExperimentConfig cfg;
    cfg.base = BaseMap::linear(2);
    cfg.fiber = FiberFamily::additive_identity();
    cfg.samples = 20000;
    cfg.steps = 5;
    cfg.fiber_bins = 64;
    const auto curve = correlation_curve(cfg);
    CHECK(curve.points[0].value == doctest::Approx(0.5).epsilon(0.05));
    for (int n = 1; n <= 5; ++n)
      CHECK(curve.points[n].value < 5.0 / std::sqrt(20000.0));
    CHECK(curve.c_phi_psi ==
          doctest::Approx(2.0 * (2.0 / M_PI) * (2.0 * M_PI + 1.0)));
  }
}

TEST_CASE("memory loss curve") {
  ExperimentConfig cfg;
  cfg.base = BaseMap::linear(2);
  cfg.fiber = FiberFamily::additive_identity();
  cfg.samples = 4000;
  cfg.steps = 5;
  const auto mu1 = product_delta_cloud(cfg.samples, 0.1, cfg.seed);
  const auto mu2 = product_delta_cloud(cfg.samples, 0.9, cfg.seed);
  SUBCASE("identical clouds stay at zero") {
    const auto curve = memory_loss_curve(cfg, mu1, mu1);
    for (const auto& p : curve.points) CHECK(p.value == doctest::Approx(0.0));
  }
  SUBCASE("delta clouds start at the dirac distance and mix fast") {
    const auto curve = memory_loss_curve(cfg, mu1, mu2);
    CHECK(curve.points[0].value == doctest::Approx(0.2));
    CHECK(curve.points[1].value < 0.01);
  }
  SUBCASE("symmetric in the two clouds") {
    const auto a = memory_loss_curve(cfg, mu1, mu2);
    const auto b = memory_loss_curve(cfg, mu2, mu1);
    for (std::size_t i = 0; i < a.points.size(); ++i)
      CHECK(a.points[i].value == doctest::Approx(b.points[i].value));
  }
}

TEST_CASE("gap between the empirical cascade and the block operator") {
  ExperimentConfig cfg;
  cfg.base = BaseMap::linear(4);
  cfg.fiber = FiberFamily::additive_identity();
  cfg.samples = 20000;
  cfg.fiber_bins = 128;
  cfg.quad_nodes = 128;
  SUBCASE("zero steps compare a binned family with itself") {
    const auto gaps = delta_vs_L_gap(cfg, 0);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == doctest::Approx(0.0));
  }
  SUBCASE("one step of a uniformizing system stays within sampling noise") {
    const auto gaps = delta_vs_L_gap(cfg, 1);
    CHECK(gaps[0] < 0.02);
  }
  SUBCASE("too small a cloud for the cell count is refused") {
    cfg.samples = 2;
    cfg.base = BaseMap::linear(8);
    CHECK_THROWS_AS(delta_vs_L_gap(cfg, 0), RejectedInputError);
  }
}

TEST_CASE("disintegration lipschitz tracking") {
  ExperimentConfig cfg;
  cfg.fiber = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  SUBCASE("weak expansion is refused with the constants in the message") {
    cfg.base = BaseMap::linear(2);
    try {
      disintegration_invariance(cfg, uniform_product_cloud(100, 1));
      FAIL("expected rejection");
    } catch (const RejectedInputError& e) {
      CHECK(std::string(e.what()).find("sigma_hat") != std::string::npos);
    }
  }
  SUBCASE("tracks the estimate and reports closed-form bounds") {
    cfg.base = BaseMap::linear(8);
    cfg.samples = 8000;
    cfg.steps = 4;
    cfg.base_bins = 8;
    const auto track =
        disintegration_invariance(cfg, uniform_product_cloud(cfg.samples, cfg.seed));
    REQUIRE(int(track.points.size()) == 5);
    for (const auto& [n, lip] : track.points) {
      CHECK(lip >= 0.0);
      CHECK(std::isfinite(lip));
    }
    CHECK(track.noise_bound > 0.0);
    CHECK(track.bounds.ell0_nodist == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("final-histogram comparison against the iid-forcing chain") {
  ExperimentConfig cfg;
  cfg.fiber = FiberFamily::additive_identity();
  cfg.samples = 5000;
  cfg.steps = 10;
  cfg.hist_bins = 50;
  const auto cmp = eta_comparison(cfg, {BaseMap::linear(2)});
  REQUIRE(cmp.rows.size() == 1);
  CHECK(cmp.rows[0].base_name == BaseMap::linear(2).name());
  CHECK(cmp.rows[0].histogram.bins() == 50);
  CHECK(cmp.eta0_iid.bins() == 50);
  // shift forcing uniformizes both chains, so they agree up to noise
  CHECK(cmp.rows[0].w1_to_iid < 0.05);
  CHECK(cmp.iid_self_distance >= 0.0);
  CHECK(cmp.iid_self_distance < 0.05);
}

TEST_CASE("power-law slope estimation") {
  SUBCASE("exact inverse law") {
    CHECK(power_law_exponent({{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.25}}) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("exact inverse-square law") {
    CHECK(power_law_exponent({{2.0, 0.25}, {4.0, 0.0625}, {8.0, 0.015625}}) ==
          doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("degenerate abscissae are refused") {
    CHECK_THROWS_AS(power_law_exponent({{2.0, 0.3}, {2.0, 0.4}}),
                    RejectedInputError);
    CHECK_THROWS_AS(power_law_exponent({{2.0, 0.3}}), RejectedInputError);
    CHECK_THROWS_AS(power_law_exponent({{2.0, 0.0}, {4.0, 0.1}}),
                    RejectedInputError);
  }
}

TEST_CASE("noise-floor scaling guards") {
  ExperimentConfig cfg;
  cfg.sweep = {BaseMap::linear(2), BaseMap::linear(4)};
  CHECK_THROWS_AS(epsilon_scaling(cfg), RejectedInputError);
}
