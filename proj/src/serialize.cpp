#include "eqm/serialize.hpp"

#include <fstream>
#include <sstream>

namespace eqm::io {

Json ket_to_json(const ComplexVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    j.push_back({v(i).real(), v(i).imag()});
  return j;
}

ComplexVector ket_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("ket must be a non-empty array");
  ComplexVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw ValidationError("ket entries must be [re, im] pairs");
    v(static_cast<Eigen::Index>(i)) =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return v;
}

Json operator_to_json(const ComplexMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    j.push_back(std::move(row));
  }
  return j;
}

ComplexMatrix operator_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ValidationError("operator must be a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw ValidationError("operator rows must be equal length");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(j[r][c][0].get<double>(), j[r][c][1].get<double>());
  }
  return m;
}

Json direction_to_json(const spin::Direction& d) { return Json{d.x, d.y, d.z}; }

spin::Direction direction_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw ValidationError("direction must be [x, y, z]");
  return spin::Direction(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

namespace {

std::vector<std::vector<int>> int_table(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError(what + " rows must be arrays");
    table.push_back(row.get<std::vector<int>>());
  }
  return table;
}

}  // namespace

core::EVariableSystem system_from_json(const Json& j) {
  for (const char* key : {"points", "elements", "compose", "act", "variables"})
    if (!j.contains(key))
      throw ValidationError(std::string("system is missing field '") + key + "'");

  core::FiniteSpace space(j.at("points").get<std::vector<std::string>>());
  core::FiniteGroupAction action(
      space, j.at("elements").get<std::vector<std::string>>(),
      int_table(j.at("compose"), "compose"), int_table(j.at("act"), "act"));

  std::vector<std::string> names;
  std::vector<core::EVariableMap> variables;
  for (const auto& [name, spec] : j.at("variables").items()) {
    names.push_back(name);
    variables.emplace_back(space, spec.at("values").get<std::vector<std::string>>(),
                           spec.at("assign").get<std::vector<int>>());
  }

  std::map<std::pair<int, int>, int> connectors;
  if (j.contains("connectors")) {
    for (const auto& [key, value] : j.at("connectors").items()) {
      const auto colon = key.find(':');
      if (colon == std::string::npos)
        throw ValidationError("connector keys look like 'a:b', got " + key);
      auto find_name = [&](const std::string& n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end())
          throw ValidationError("connector references unknown variable " + n);
        return static_cast<int>(it - names.begin());
      };
      const int a = find_name(key.substr(0, colon));
      const int b = find_name(key.substr(colon + 1));
      connectors[{a, b}] = action.element_index(value.get<std::string>());
    }
  }

  std::vector<std::vector<int>> component_groups;
  if (j.contains("component_groups")) {
    component_groups.resize(names.size());
    std::vector<bool> given(names.size(), false);
    for (const auto& [name, ids] : j.at("component_groups").items()) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end())
        throw ValidationError("component group for unknown variable " + name);
      const auto a = static_cast<size_t>(it - names.begin());
      for (const auto& id : ids)
        component_groups[a].push_back(action.element_index(id.get<std::string>()));
      given[a] = true;
    }
    for (size_t a = 0; a < names.size(); ++a)
      if (!given[a])
        component_groups[a] = core::compatible_subgroup(variables[a], action);
  }

  return core::EVariableSystem(std::move(action), std::move(names),
                               std::move(variables), std::move(connectors),
                               std::move(component_groups));
}

std::string theta0_name(const Json& j) {
  if (j.contains("theta0")) return j.at("theta0").get<std::string>();
  return j.at("variables").items().begin().key();
}

core::EVariableSystem load_system(const std::filesystem::path& path) {
  return system_from_json(Json::parse(read_file(path)));
}

measure::StatisticalModel model_from_json(const Json& j) {
  auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
  auto values = j.at("values").get<std::vector<std::string>>();
  const auto& rows = j.at("q");
  Eigen::MatrixXd q(alphabet.size(), values.size());
  if (rows.size() != alphabet.size())
    throw ValidationError("model q needs one row per data label");
  for (size_t x = 0; x < alphabet.size(); ++x) {
    if (rows[x].size() != values.size())
      throw ValidationError("model q rows need one entry per value");
    for (size_t v = 0; v < values.size(); ++v)
      q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(v)) =
          rows[x][v].get<double>();
  }
  return measure::StatisticalModel(std::move(alphabet), std::move(values),
                                   std::move(q));
}

Json model_to_json(const measure::StatisticalModel& model) {
  Json rows = Json::array();
  for (Eigen::Index x = 0; x < model.q.rows(); ++x) {
    Json row = Json::array();
    for (Eigen::Index v = 0; v < model.q.cols(); ++v) row.push_back(model.q(x, v));
    rows.push_back(std::move(row));
  }
  return Json{{"alphabet", model.data_alphabet},
              {"values", model.value_labels},
              {"q", std::move(rows)}};
}

Json resolution_to_json(const measure::ProjectiveResolution& res) {
  Json projectors = Json::array();
  for (const auto& p : res.projectors) projectors.push_back(operator_to_json(p.entries));
  return Json{{"labels", res.labels}, {"projectors", std::move(projectors)}};
}

measure::ProjectiveResolution resolution_from_json(const Json& j) {
  auto labels = j.at("labels").get<std::vector<std::string>>();
  std::vector<measure::Projector> projectors;
  for (const auto& entry : j.at("projectors"))
    projectors.emplace_back(operator_from_json(entry));
  return measure::ProjectiveResolution(std::move(projectors), std::move(labels));
}

Json posterior_to_json(const infer::PosteriorDistribution& p) {
  Json weights = Json::object();
  for (size_t i = 0; i < p.labels.size(); ++i) weights[p.labels[i]] = p.weights[i];
  return weights;
}

Json inference_report_to_json(const infer::InferenceReport& report) {
  return Json{{"schema_version", kSchemaVersion},
              {"posterior", posterior_to_json(report.posterior)},
              {"mle", report.mle},
              {"credibility_set",
               {{"labels", report.credibility.labels},
                {"achieved_level", report.credibility.achieved_level},
                {"requested_level", report.requested_level}}},
              {"n_observations", report.n_observations}};
}

Json scenario_report_to_json(const scenario::ScenarioReport& report) {
  Json stages = Json::array();
  for (const auto& stage : report.stages) {
    Json states = Json::object();
    Json coherence = Json::object();
    for (size_t i = 0; i < stage.states.size(); ++i) {
      states[stage.states[i].observer] =
          operator_to_json(stage.states[i].state.entries);
      coherence[stage.states[i].observer] = stage.coherence[i];
    }
    stages.push_back(Json{{"name", stage.name},
                          {"states", std::move(states)},
                          {"off_diagonal", std::move(coherence)},
                          {"agreement", stage.agreement}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"scenario", report.name},
              {"stages", std::move(stages)}};
}

std::string samples_to_csv(const std::vector<std::string>& outcomes) {
  std::ostringstream out;
  out << "trial,outcome\n";
  for (size_t i = 0; i < outcomes.size(); ++i) out << i << ',' << outcomes[i] << '\n';
  return out.str();
}

std::vector<std::string> samples_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> outcomes;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      if (line != "trial,outcome")
        throw ValidationError("samples CSV must start with 'trial,outcome'");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ValidationError("malformed samples CSV line: " + line);
    outcomes.push_back(line.substr(comma + 1));
  }
  if (header) throw ValidationError("samples CSV is empty");
  return outcomes;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw ValidationError("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace eqm::io
