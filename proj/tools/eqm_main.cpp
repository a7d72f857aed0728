// eqm: question-answer spin states, noisy measurements, inference over
// answers, and finite symmetry-system reconstruction checks, driven by JSON
// configs. Exit codes: 0 success, 2 validation error, 3 verification failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "eqm/inference.hpp"
#include "eqm/measure.hpp"
#include "eqm/report.hpp"
#include "eqm/scenario.hpp"
#include "eqm/serialize.hpp"
#include "eqm/spin.hpp"

namespace {

using eqm::ComplexVector;
using eqm::ValidationError;
using Json = eqm::io::Json;

constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct Output {
  std::optional<std::string> path;

  void emit(const Json& report) const {
    const std::string text = report.dump(2) + "\n";
    if (path)
      eqm::io::atomic_write(*path, text);
    else
      std::cout << text;
  }
};

Json load_config(const std::string& path) {
  return Json::parse(eqm::io::read_file(path));
}

eqm::spin::SpinSystem spin_system_from(const Json& config) {
  if (!config.contains("j")) throw ValidationError("config needs field 'j'");
  return eqm::spin::SpinSystem::from_j(config.at("j").get<double>());
}

struct Measurement {
  eqm::measure::ProjectiveResolution resolution;
  eqm::measure::StatisticalModel model;
};

Measurement measurement_from(const Json& config, const eqm::spin::SpinSystem& system) {
  if (!config.contains("measurement"))
    throw ValidationError("config needs field 'measurement'");
  const Json& m = config.at("measurement");
  auto resolution = eqm::measure::resolution_from_direction(
      system, eqm::io::direction_from_json(m.at("direction")));

  const Json& model_spec = m.at("model");
  const std::string type = model_spec.at("type").get<std::string>();
  if (type == "noiseless")
    return {resolution, eqm::measure::StatisticalModel::noiseless(resolution.labels)};
  if (type == "symmetric_noise")
    return {resolution,
            eqm::measure::StatisticalModel::symmetric_noise(
                resolution.labels, model_spec.at("epsilon").get<double>())};
  if (type == "uniform")
    return {resolution,
            eqm::measure::StatisticalModel::uniform(
                model_spec.contains("alphabet")
                    ? model_spec.at("alphabet").get<std::vector<std::string>>()
                    : resolution.labels,
                resolution.labels)};
  if (type == "table") {
    Json table = model_spec;
    if (!table.contains("values")) table["values"] = resolution.labels;
    return {resolution, eqm::io::model_from_json(table)};
  }
  throw ValidationError("unknown model type: " + type);
}

eqm::measure::DensityOperator state_from(const Json& config,
                                         const eqm::spin::SpinSystem& system) {
  if (!config.contains("state")) throw ValidationError("config needs field 'state'");
  const Json& s = config.at("state");
  const std::string type = s.at("type").get<std::string>();
  if (type == "question_answer") {
    auto ket = eqm::spin::question_answer_state(
        system, eqm::io::direction_from_json(s.at("direction")),
        s.at("k").get<double>());
    return eqm::measure::DensityOperator::pure(ket);
  }
  if (type == "mixture") {
    auto res = eqm::measure::resolution_from_direction(
        system, eqm::io::direction_from_json(s.at("direction")));
    return eqm::measure::density_from_distribution(
        res, s.at("probabilities").get<std::vector<double>>());
  }
  if (type == "matrix")
    return eqm::measure::DensityOperator(eqm::io::operator_from_json(s.at("rho")));
  throw ValidationError("unknown state type: " + type);
}

int run_spin(const Json& config, const Output& out) {
  auto system = spin_system_from(config);
  auto direction = eqm::io::direction_from_json(config.at("direction"));
  auto op = eqm::spin::component_operator(system, direction);
  auto es = eqm::spin::eigensystem(op);

  Json pairs = Json::array();
  for (const auto& pair : es.pairs) {
    const double residual = (op * pair.vector - pair.value * pair.vector).norm();
    pairs.push_back(Json{{"value", pair.value},
                         {"ket", eqm::io::ket_to_json(pair.vector)},
                         {"residual", residual}});
  }
  out.emit(Json{{"schema_version", eqm::io::kSchemaVersion},
                {"j", system.j()},
                {"direction", eqm::io::direction_to_json(direction)},
                {"degenerate", es.degenerate},
                {"eigensystem", std::move(pairs)}});
  return 0;
}

int run_measure(const Json& config, std::uint64_t seed, const Output& out) {
  auto system = spin_system_from(config);
  auto rho = state_from(config, system);
  auto [resolution, model] = measurement_from(config, system);
  const int n = config.at("n").get<int>();

  auto effect = eqm::measure::likelihood_effect(model, resolution);
  auto probabilities = eqm::measure::outcome_distribution(rho, effect);
  auto samples = eqm::measure::sample_data(rho, model, resolution, n, seed);

  if (!out.path)
    throw ValidationError("measure writes a CSV next to the report: --out needed");
  std::filesystem::path csv_path(*out.path);
  csv_path.replace_extension(".csv");
  eqm::io::atomic_write(csv_path, eqm::io::samples_to_csv(samples));

  Json probability_map = Json::object();
  for (size_t i = 0; i < probabilities.size(); ++i)
    probability_map[model.data_alphabet[i]] = probabilities[i];
  out.emit(Json{{"schema_version", eqm::io::kSchemaVersion},
                {"j", system.j()},
                {"n", n},
                {"seed", seed},
                {"born_probabilities", std::move(probability_map)},
                {"samples_csv", csv_path.filename().string()}});
  return 0;
}

int run_infer(const Json& config, const Output& out) {
  auto system = spin_system_from(config);
  auto [resolution, model] = measurement_from(config, system);
  const double level = config.value("level", 0.95);

  const std::string mode = config.value("mode", "repeated");
  eqm::infer::InferenceReport report = [&] {
    if (mode == "single_shot") {
      auto rho = state_from(config, system);
      auto effect = eqm::measure::likelihood_effect(model, resolution);
      const std::string x = config.at("x").get<std::string>();
      auto posterior =
          eqm::infer::posterior_single_shot(rho, effect, resolution, x);
      return eqm::infer::make_report(posterior, model, {x}, level);
    }
    if (mode != "repeated") throw ValidationError("unknown infer mode: " + mode);

    std::vector<double> prior_weights(model.value_labels.size(),
                                      1.0 / model.value_labels.size());
    if (config.contains("prior"))
      prior_weights = config.at("prior").get<std::vector<double>>();
    eqm::infer::PosteriorDistribution prior(model.value_labels, prior_weights);

    std::vector<std::string> data;
    if (config.contains("data_csv"))
      data = eqm::io::samples_from_csv(
          eqm::io::read_file(config.at("data_csv").get<std::string>()));
    else if (config.contains("data"))
      data = config.at("data").get<std::vector<std::string>>();
    auto posterior = eqm::infer::posterior_repeated(prior, model, data);
    return eqm::infer::make_report(posterior, model, data, level);
  }();

  out.emit(eqm::io::inference_report_to_json(report));
  return 0;
}

int run_reconstruct(const Json& config, const std::string& config_path,
                    const Output& out) {
  auto system = eqm::io::system_from_json(config);
  const std::string theta0 = eqm::io::theta0_name(config);
  const std::string name =
      config.value("name", std::filesystem::path(config_path).stem().string());
  Json report = eqm::recon::reconstruction_report(system, theta0, name);
  out.emit(report);
  return report.at("question_answer").at("pass").get<bool>() ? 0 : kExitVerification;
}

int run_scenario(const std::string& name, const Output& out) {
  auto report = eqm::scenario::run_scenario(name);
  out.emit(eqm::io::scenario_report_to_json(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epistemic question-answer states, measurements and inference"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::string scenario_name;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config_path, "JSON config file");
    if (config_required) opt->required();
    cmd->add_option("--seed", seed, "random seed (default 0)");
    cmd->add_option("--out", out_path, "output path (stdout when omitted)");
  };

  add_common(app.add_subcommand("spin", "eigenvalues and kets of a component"),
             true);
  add_common(app.add_subcommand("measure", "Born probabilities and samples"),
             true);
  add_common(app.add_subcommand("infer", "posterior, MLE and credibility set"),
             true);
  add_common(app.add_subcommand(
                 "reconstruct", "verify a conceptual-variable system fixture"),
             true);
  auto* scenario_cmd =
      app.add_subcommand("scenario", "epistemic-state demos (cat, wigner, two-slit)");
  add_common(scenario_cmd, false);
  scenario_cmd->add_option("--name", scenario_name, "scenario name");

  CLI11_PARSE(app, argc, argv);

  Output out;
  if (!out_path.empty()) out.path = out_path;

  try {
    if (app.got_subcommand("spin")) return run_spin(load_config(config_path), out);
    if (app.got_subcommand("measure"))
      return run_measure(load_config(config_path), seed, out);
    if (app.got_subcommand("infer")) return run_infer(load_config(config_path), out);
    if (app.got_subcommand("reconstruct"))
      return run_reconstruct(load_config(config_path), config_path, out);
    if (app.got_subcommand("scenario")) {
      std::string name = scenario_name;
      if (name.empty()) {
        if (config_path.empty())
          throw ValidationError("scenario needs --name or --config");
        name = load_config(config_path).at("name").get<std::string>();
      }
      return run_scenario(name, out);
    }
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
