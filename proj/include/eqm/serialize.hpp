#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqm/group.hpp"
#include "eqm/inference.hpp"
#include "eqm/linalg.hpp"
#include "eqm/measure.hpp"
#include "eqm/scenario.hpp"

namespace eqm::io {

/// All emitted JSON keeps insertion order so reruns are byte-identical.
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json ket_to_json(const ComplexVector& v);
ComplexVector ket_from_json(const Json& j);

Json operator_to_json(const ComplexMatrix& m);
ComplexMatrix operator_from_json(const Json& j);

Json direction_to_json(const spin::Direction& d);
spin::Direction direction_from_json(const Json& j);

/// Conceptual-system schema: {points, elements, compose, act,
/// variables:{name:{values, assign}}, connectors:{"a:b": element},
/// component_groups (optional), theta0 (optional)}. Indices 0-based.
core::EVariableSystem system_from_json(const Json& j);
/// Name of the designated variable, defaulting to the first declared one.
std::string theta0_name(const Json& j);

core::EVariableSystem load_system(const std::filesystem::path& path);

measure::StatisticalModel model_from_json(const Json& j);
Json model_to_json(const measure::StatisticalModel& model);

/// {"labels": [...], "projectors": [matrix, ...]}; loading re-validates the
/// completeness and orthogonality invariants.
Json resolution_to_json(const measure::ProjectiveResolution& res);
measure::ProjectiveResolution resolution_from_json(const Json& j);

Json posterior_to_json(const infer::PosteriorDistribution& p);
Json inference_report_to_json(const infer::InferenceReport& report);
Json scenario_report_to_json(const scenario::ScenarioReport& report);

/// Samples as CSV: header "trial,outcome", LF endings, UTF-8.
std::string samples_to_csv(const std::vector<std::string>& outcomes);
std::vector<std::string> samples_from_csv(const std::string& csv);

/// Writes content to a temporary sibling and renames it into place, so a
/// failed run never leaves a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace eqm::io
