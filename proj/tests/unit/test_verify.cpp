#include <doctest.h>

#include <algorithm>

#include "skewlab/verify.hpp"

using namespace skewlab;

TEST_CASE("check catalog") {
  const auto names = verification_names();
  CHECK(names.size() >= 10);
  for (const char* expected :
       {"wasserstein-oracle", "column-stochasticity", "block-rows-minorization",
        "fixed-point-residual", "linear-eta-bar-vs-eta0", "bounds-formulas"})
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
}

TEST_CASE("subset selection runs only the named checks") {
  const auto results =
      run_verification({"wasserstein-oracle", "bounds-formulas"});
  REQUIRE(results.size() == 2);
  CHECK(results[0].name == "wasserstein-oracle");
  CHECK(results[1].name == "bounds-formulas");
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("unknown check names are rejected") {
  CHECK_THROWS_AS(run_verification({"no-such-check"}), RejectedInputError);
}

TEST_CASE("an injected broken operator fails column stochasticity") {
  const UlamOperator broken(2, {0.5, 0.2, 0.5, 0.2});
  const auto results = run_verification({"column-stochasticity"}, &broken);
  REQUIRE(results.size() == 1);
  CHECK(!results[0].passed);
  CHECK(!results[0].detail.empty());
}

TEST_CASE("the transport lemma checks pass") {
  for (const auto& r : run_verification(
           {"pushforward-lipschitz", "mixture-distance", "w1-tv-diameter",
            "convex-combination"})) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
}
