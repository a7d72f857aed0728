#include "eqm/report.hpp"

#include <cmath>

#include "eqm/reconstruction.hpp"

namespace eqm::recon {

using io::Json;

namespace {

/// Answer values as reals for the operator assembly: numeric labels are
/// parsed, otherwise the label indices stand in.
std::vector<double> values_as_reals(const std::vector<std::string>& labels) {
  std::vector<double> parsed;
  for (const auto& label : labels) {
    try {
      size_t consumed = 0;
      double v = std::stod(label, &consumed);
      if (consumed != label.size()) break;
      parsed.push_back(v);
    } catch (const std::exception&) {
      break;
    }
  }
  if (parsed.size() == labels.size()) return parsed;
  std::vector<double> indices(labels.size());
  for (size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<double>(i);
  return indices;
}

Json schur_section(const core::FiniteGroupAction& action,
                   const core::EVariableMap& theta0) {
  Json out;
  auto h = build_hilbert_space(action.space(), theta0);
  auto rep = regular_representation(action);
  auto restricted = restrict_representation(rep, h);
  out["restriction_unitary"] = restricted.unitary;
  out["unitarity_residual"] = restricted.unitarity_residual;
  if (restricted.unitary) {
    ComplexVector fiducial = ComplexVector::Zero(h.dim());
    fiducial(0) = 1.0;
    auto avg = group_average_identity(restricted, fiducial);
    out["lambda"] = avg.lambda;
    out["residual"] = avg.residual;
    out["proportional_to_identity"] = avg.proportional;
    out["expected_lambda"] =
        static_cast<double>(action.order()) / static_cast<double>(h.dim());
  }
  return out;
}

}  // namespace

Json reconstruction_report(const core::EVariableSystem& system,
                           const std::string& theta0,
                           const std::string& fixture_name) {
  const auto& action = system.group();
  const int t0 = system.variable_index(theta0);

  Json report;
  report["schema_version"] = io::kSchemaVersion;
  if (!fixture_name.empty()) report["fixture"] = fixture_name;
  report["space"] = {{"points", action.space().points},
                     {"size", action.space().size()}};
  report["group"] = {{"order", action.order()}, {"axioms_verified", true}};
  report["theta0"] = theta0;

  Json variables = Json::array();
  for (int a = 0; a < system.variable_count(); ++a) {
    const auto& theta = system.variable(a);
    Json entry;
    entry["name"] = system.variable_names()[a];
    entry["values"] = theta.values;
    auto perm = core::check_permissible(theta, action);
    entry["permissible_wrt_group"] = perm.permissible;
    if (!perm.permissible) {
      const auto& [k, p1, p2] = *perm.witness;
      entry["witness"] = {{"element", action.elements()[k]},
                          {"points",
                           {action.space().points[p1], action.space().points[p2]}}};
    }
    auto component = core::subgroup_action(action, system.component_group(a));
    entry["component_group_order"] = component.order();
    auto induced = core::induced_group(theta, component);
    entry["induced_group_order"] = induced.group.order();
    if (perm.permissible)
      entry["induced_group_order_wrt_group"] =
          core::induced_group(theta, action).group.order();
    variables.push_back(std::move(entry));
  }
  report["variables"] = std::move(variables);

  auto generating = core::check_generating_assumption(system);
  report["generating_assumption"] = {{"holds", generating.generates},
                           {"closure_size", generating.closure_size},
                           {"group_order", action.order()}};

  auto orbit_parts = core::orbits(action);
  Json orbit_json = Json::array();
  for (const auto& orbit : orbit_parts) {
    Json labels = Json::array();
    for (int p : orbit) labels.push_back(action.space().points[p]);
    orbit_json.push_back(std::move(labels));
  }
  report["orbits"] = std::move(orbit_json);
  const bool transitive = orbit_parts.size() == 1;
  report["transitive"] = transitive;

  auto h = build_hilbert_space(system.space(), system.variable(t0));
  report["hilbert_space"] = {{"dimension", h.dim()},
                             {"ambient_dimension", h.ambient_dim},
                             {"value_labels", h.value_labels}};
  // The representation constructor enumerates the property exactly.
  regular_representation(action);
  report["representation"] = {{"property_exact", true}};

  auto question_answer = verify_question_answer_states(system, t0);
  Json t1;
  Json per_variable = Json::array();
  for (const auto& check : question_answer.orthonormality) {
    per_variable.push_back(Json{{"variable", check.variable},
                                {"constructed", check.constructed},
                                {"gram_residual", check.gram_residual},
                                {"orthonormal", check.ok}});
  }
  t1["per_variable"] = std::move(per_variable);
  Json states = Json::array();
  for (const auto& entry : question_answer.states)
    states.push_back(Json{{"variable", entry.variable},
                          {"answer", entry.answer},
                          {"ket", io::ket_to_json(entry.state)}});
  t1["states"] = std::move(states);
  Json overlaps = Json::array();
  for (const auto& row : question_answer.overlap_moduli) overlaps.push_back(row);
  t1["overlap_moduli"] = std::move(overlaps);
  t1["max_cross_overlap"] = question_answer.max_cross_overlap;
  t1["distinct"] = question_answer.distinct_ok;
  auto witness_json = [&](const std::vector<OverlapWitness>& list) {
    Json arr = Json::array();
    for (const auto& w : list) {
      arr.push_back(Json{{"a", {w.variable_a, w.answer_a}},
                         {"b", {w.variable_b, w.answer_b}},
                         {"overlap", w.overlap}});
    }
    return arr;
  };
  t1["violations"] = witness_json(question_answer.violations);
  t1["trivial_coincidences"] = witness_json(question_answer.trivial_coincidences);
  t1["pass"] = question_answer.pass;
  report["question_answer"] = std::move(t1);

  // Operator over the designated variable's basis states, compressed to the
  // function space so the spectrum carries no ambient padding.
  auto values = values_as_reals(h.value_labels);
  std::vector<ComplexVector> basis_states;
  for (int k = 0; k < h.dim(); ++k) basis_states.push_back(h.basis.col(k));
  auto observable = operator_from_states(values, basis_states);
  ComplexMatrix observable_h = h.basis.adjoint() * observable * h.basis;
  auto comparison = eigenvalue_value_coincidence(observable_h, values);
  report["observable"] = {{"values", comparison.declared},
                          {"spectrum", comparison.spectrum},
                          {"eigenvalues_match_values", comparison.coincide}};

  Json schur = schur_section(action, system.variable(t0));
  if (!transitive) {
    Json per_orbit = Json::array();
    for (const auto& orbit : orbit_parts) {
      auto sub_action = action.restricted_to(orbit);
      auto sub_theta = system.variable(t0).restricted_to(orbit);
      Json entry = schur_section(sub_action, sub_theta);
      Json labels = Json::array();
      for (int p : orbit) labels.push_back(action.space().points[p]);
      entry["points"] = std::move(labels);
      entry["dimension"] = sub_theta.value_count();
      per_orbit.push_back(std::move(entry));
    }
    schur["per_orbit"] = std::move(per_orbit);
  }
  report["schur"] = std::move(schur);
  return report;
}

}  // namespace eqm::recon
