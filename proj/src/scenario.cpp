#include "eqm/scenario.hpp"

#include <cmath>

namespace eqm::scenario {

namespace {

constexpr double kAgreementTol = 1e-10;

bool all_equal(const std::vector<ObserverState>& states) {
  for (size_t i = 1; i < states.size(); ++i) {
    if ((states[i].state.entries - states[0].state.entries).cwiseAbs().maxCoeff() >
        kAgreementTol)
      return false;
  }
  return true;
}

Stage make_stage(std::string name, std::vector<ObserverState> states) {
  Stage stage{std::move(name), std::move(states), false, {}};
  stage.agreement = all_equal(stage.states);
  for (const auto& os : stage.states)
    stage.coherence.push_back(std::abs(os.state.entries(0, 1)));
  return stage;
}

/// Two observers, one ignorant and one informed, then communication.
ScenarioReport ignorance_scenario(const std::string& name,
                                  const std::string& outside,
                                  const std::string& inside) {
  spin::SpinSystem qubit(1);
  auto res = measure::resolution_from_direction(qubit, spin::Direction(0, 0, 1));
  // "Don't know": uniform mixture over the two answers.
  auto unknown = measure::density_from_distribution(res, {0.5, 0.5});
  // The inside observer holds the definite answer (index 1: +1/2).
  const auto& answer = res.projectors[1];
  auto known = measure::lueders_update(unknown, answer);

  ScenarioReport report{name, {}};
  report.stages.push_back(
      make_stage("before", {{outside, unknown}, {inside, known}}));
  // Communication: the outside observer conditions on the announced answer.
  auto updated = measure::lueders_update(unknown, answer);
  report.stages.push_back(
      make_stage("after", {{outside, updated}, {inside, known}}));
  return report;
}

ScenarioReport two_slit_scenario() {
  spin::SpinSystem qubit(1);
  // Which-slit variable along z; the complementary variable along x.
  auto dont_know = measure::DensityOperator::pure(
      spin::question_answer_state(qubit, spin::Direction(1, 0, 0), 0.5));
  auto slit_known = measure::DensityOperator::pure(
      spin::question_answer_state(qubit, spin::Direction(0, 0, 1), 0.5));

  // All observers communicate at every stage, so each stage holds a single
  // shared state.
  ScenarioReport report{"two-slit", {}};
  report.stages.push_back(make_stage(
      "dont_know", {{"all", dont_know}, {"all-imagined", dont_know}}));
  report.stages.push_back(make_stage(
      "which_slit_known", {{"all", slit_known}, {"all-imagined", slit_known}}));
  return report;
}

}  // namespace

ScenarioReport run_scenario(const std::string& name) {
  if (name == "cat") return ignorance_scenario("cat", "outside", "inside");
  if (name == "wigner") return ignorance_scenario("wigner", "wigner", "friend");
  if (name == "two-slit") return two_slit_scenario();
  throw ValidationError("unknown scenario: " + name);
}

}  // namespace eqm::scenario
