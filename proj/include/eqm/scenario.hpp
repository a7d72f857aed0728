#pragma once

#include <string>
#include <vector>

#include "eqm/measure.hpp"

namespace eqm::scenario {

struct ObserverState {
  std::string observer;
  measure::DensityOperator state;
};

struct Stage {
  std::string name;
  std::vector<ObserverState> states;
  /// True iff all observer states at this stage agree within 1e-10.
  bool agreement = false;
  /// Magnitude of the off-diagonal coherence of each state, in observer order.
  std::vector<double> coherence;
};

struct ScenarioReport {
  std::string name;
  std::vector<Stage> stages;
};

/// Runs one of the epistemic-state demos: "cat", "wigner" or "two-slit".
/// cat/wigner: an ignorant outside observer (uniform mixture over the two
/// answers) and an informed inside observer (pure answer state) disagree
/// until the answer is communicated, after which both hold the conditioned
/// state. two-slit: all observers communicate throughout; "don't know" is an
/// eigenstate of the complementary variable (off-diagonal 1/2), a known slit
/// is a slit eigenstate (off-diagonal 0).
ScenarioReport run_scenario(const std::string& name);

}  // namespace eqm::scenario
