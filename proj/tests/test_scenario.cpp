#include "eqm/scenario.hpp"

#include <doctest.h>

#include <cmath>

using namespace eqm;
using namespace eqm::scenario;

TEST_CASE("cat and wigner agree only after communication") {
  for (const auto& name : {std::string("cat"), std::string("wigner")}) {
    auto report = run_scenario(name);
    REQUIRE(report.stages.size() == 2);
    CHECK(report.stages[0].name == "before");
    CHECK_FALSE(report.stages[0].agreement);
    CHECK(report.stages[1].name == "after");
    CHECK(report.stages[1].agreement);

    // Before: the ignorant observer holds the uniform mixture.
    const auto& outside = report.stages[0].states[0].state;
    CHECK((outside.entries - 0.5 * ComplexMatrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    // After: both hold the same pure conditioned state.
    const auto& final_state = report.stages[1].states[0].state;
    CHECK(std::abs((final_state.entries * final_state.entries).trace().real() - 1.0) <
          1e-10);
  }
}

TEST_CASE("two-slit coherence distinguishes the epistemic states") {
  auto report = run_scenario("two-slit");
  REQUIRE(report.stages.size() == 2);
  // All observers communicate throughout: agreement at every stage.
  CHECK(report.stages[0].agreement);
  CHECK(report.stages[1].agreement);
  CHECK(std::abs(report.stages[0].coherence[0] - 0.5) < 1e-12);
  CHECK(std::abs(report.stages[1].coherence[0] - 0.0) < 1e-12);
}

TEST_CASE("unknown scenario names are rejected") {
  CHECK_THROWS_AS(run_scenario("teleporter"), ValidationError);
}
