#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqm/group.hpp"
#include "eqm/inference.hpp"
#include "eqm/measure.hpp"
#include "eqm/report.hpp"
#include "eqm/scenario.hpp"
#include "eqm/serialize.hpp"
#include "eqm/spin.hpp"

namespace py = pybind11;
using namespace eqm;

namespace {

spin::Direction direction_from(const std::vector<double>& a) {
  if (a.size() != 3) throw ValidationError("direction must have 3 components");
  return spin::Direction(a[0], a[1], a[2]);
}

py::object json_to_py(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict posterior_dict(const infer::PosteriorDistribution& p) {
  py::dict out;
  for (size_t i = 0; i < p.labels.size(); ++i)
    out[py::str(p.labels[i])] = p.weights[i];
  return out;
}

infer::PosteriorDistribution posterior_from(
    const measure::StatisticalModel& model, const py::object& prior) {
  if (prior.is_none()) {
    return infer::PosteriorDistribution(
        model.value_labels,
        std::vector<double>(model.value_labels.size(),
                            1.0 / model.value_labels.size()));
  }
  auto weights = prior.cast<std::map<std::string, double>>();
  std::vector<double> ordered;
  for (const auto& label : model.value_labels) ordered.push_back(weights.at(label));
  return infer::PosteriorDistribution(model.value_labels, ordered);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "question-answer states, measurements, inference and "
            "symmetry-system verification";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  // --- spin ---------------------------------------------------------------
  py::class_<spin::SpinSystem>(m, "SpinSystem")
      .def(py::init(&spin::SpinSystem::from_j), py::arg("j"))
      .def_property_readonly("j", &spin::SpinSystem::j)
      .def_property_readonly("dim", &spin::SpinSystem::dim);

  m.def(
      "spin_operators",
      [](double j) {
        auto ops = spin::spin_operators(spin::SpinSystem::from_j(j));
        return py::make_tuple(ops.jx, ops.jy, ops.jz);
      },
      py::arg("j"), "Component operators (Jx, Jy, Jz) in the m-descending basis.");

  m.def(
      "component_operator",
      [](double j, const std::vector<double>& a) {
        return spin::component_operator(spin::SpinSystem::from_j(j),
                                        direction_from(a));
      },
      py::arg("j"), py::arg("direction"));

  m.def(
      "eigensystem",
      [](const ComplexMatrix& op) {
        auto es = spin::eigensystem(op);
        py::list pairs;
        for (const auto& pair : es.pairs)
          pairs.append(py::make_tuple(pair.value, pair.vector));
        return py::make_tuple(pairs, es.degenerate);
      },
      py::arg("operator"),
      "Ascending (eigenvalue, ket) pairs plus a degeneracy flag.");

  m.def(
      "question_answer_state",
      [](double j, const std::vector<double>& a, double k) {
        return spin::question_answer_state(spin::SpinSystem::from_j(j),
                                           direction_from(a), k);
      },
      py::arg("j"), py::arg("direction"), py::arg("k"));

  m.def(
      "bloch_from_qubit",
      [](const ComplexVector& v) {
        auto bloch = spin::bloch_from_qubit(v);
        return py::make_tuple(
            py::make_tuple(bloch.direction.x, bloch.direction.y, bloch.direction.z),
            bloch.k);
      },
      py::arg("ket"));

  // --- measurement ----------------------------------------------------------
  py::class_<measure::ProjectiveResolution>(m, "ProjectiveResolution")
      .def_readonly("labels", &measure::ProjectiveResolution::labels)
      .def_property_readonly("size", &measure::ProjectiveResolution::size)
      .def("projector",
           [](const measure::ProjectiveResolution& res, const std::string& label) {
             return res.projectors[res.label_index(label)].entries;
           })
      .def("has_degenerate_answer",
           &measure::ProjectiveResolution::has_degenerate_answer);

  py::class_<measure::StatisticalModel>(m, "StatisticalModel")
      .def(py::init<std::vector<std::string>, std::vector<std::string>,
                    Eigen::MatrixXd>(),
           py::arg("alphabet"), py::arg("values"), py::arg("q"))
      .def_static("noiseless", &measure::StatisticalModel::noiseless,
                  py::arg("labels"))
      .def_static("symmetric_noise", &measure::StatisticalModel::symmetric_noise,
                  py::arg("labels"), py::arg("epsilon"))
      .def_static("uniform", &measure::StatisticalModel::uniform,
                  py::arg("alphabet"), py::arg("labels"))
      .def_readonly("alphabet", &measure::StatisticalModel::data_alphabet)
      .def_readonly("values", &measure::StatisticalModel::value_labels)
      .def_readonly("q", &measure::StatisticalModel::q);

  py::class_<measure::LikelihoodEffect>(m, "LikelihoodEffect")
      .def_readonly("alphabet", &measure::LikelihoodEffect::data_alphabet)
      .def("at", [](const measure::LikelihoodEffect& e,
                    const std::string& x) { return e.at(x); });

  m.def(
      "resolution_from_direction",
      [](double j, const std::vector<double>& b) {
        return measure::resolution_from_direction(spin::SpinSystem::from_j(j),
                                                  direction_from(b));
      },
      py::arg("j"), py::arg("direction"));
  m.def("resolution_from_operator", &measure::resolution_from_operator,
        py::arg("operator"), py::arg("degeneracy_tol") = 1e-8);
  m.def("resolution_from_states", &measure::resolution_from_states,
        py::arg("states"), py::arg("labels"));

  m.def(
      "density_from_distribution",
      [](const measure::ProjectiveResolution& res, const std::vector<double>& p) {
        return measure::density_from_distribution(res, p).entries;
      },
      py::arg("resolution"), py::arg("p"));
  m.def("observable_operator", &measure::observable_operator,
        py::arg("resolution"), py::arg("values"));
  m.def("likelihood_effect", &measure::likelihood_effect, py::arg("model"),
        py::arg("resolution"));
  m.def("povm_element", &measure::povm_element, py::arg("effect"),
        py::arg("subset"));
  m.def(
      "born_probability",
      [](const ComplexMatrix& rho, const ComplexMatrix& op) {
        return measure::born_probability(measure::DensityOperator(rho), op);
      },
      py::arg("rho"), py::arg("operator"));
  m.def(
      "outcome_distribution",
      [](const ComplexMatrix& rho, const measure::LikelihoodEffect& effect) {
        auto p = measure::outcome_distribution(measure::DensityOperator(rho), effect);
        py::dict out;
        for (size_t i = 0; i < p.size(); ++i)
          out[py::str(effect.data_alphabet[i])] = p[i];
        return out;
      },
      py::arg("rho"), py::arg("effect"));
  m.def(
      "sample_data",
      [](const ComplexMatrix& rho, const measure::StatisticalModel& model,
         const measure::ProjectiveResolution& res, int n, std::uint64_t seed) {
        return measure::sample_data(measure::DensityOperator(rho), model, res, n,
                                    seed);
      },
      py::arg("rho"), py::arg("model"), py::arg("resolution"), py::arg("n"),
      py::arg("seed"));
  m.def(
      "lueders_update",
      [](const ComplexMatrix& rho, const ComplexMatrix& projector) {
        return measure::lueders_update(measure::DensityOperator(rho),
                                       measure::Projector(projector))
            .entries;
      },
      py::arg("rho"), py::arg("projector"));

  // --- inference ------------------------------------------------------------
  m.def(
      "posterior_single_shot",
      [](const ComplexMatrix& rho, const measure::LikelihoodEffect& effect,
         const measure::ProjectiveResolution& res, const std::string& x) {
        return posterior_dict(infer::posterior_single_shot(
            measure::DensityOperator(rho), effect, res, x));
      },
      py::arg("rho"), py::arg("effect"), py::arg("resolution"), py::arg("x"));
  m.def(
      "posterior_repeated",
      [](const measure::StatisticalModel& model,
         const std::vector<std::string>& data, const py::object& prior) {
        return posterior_dict(
            infer::posterior_repeated(posterior_from(model, prior), model, data));
      },
      py::arg("model"), py::arg("data"), py::arg("prior") = py::none());
  m.def("mle", &infer::mle, py::arg("model"), py::arg("data"));
  m.def(
      "credibility_set",
      [](const py::dict& posterior, double level) {
        std::vector<std::string> labels;
        std::vector<double> weights;
        for (const auto& item : posterior) {
          labels.push_back(item.first.cast<std::string>());
          weights.push_back(item.second.cast<double>());
        }
        auto set = infer::credibility_set(
            infer::PosteriorDistribution(labels, weights), level);
        return py::make_tuple(set.labels, set.achieved_level);
      },
      py::arg("posterior"), py::arg("level"));
  m.def("effects_equal", &infer::effects_equal, py::arg("effect1"),
        py::arg("effect2"), py::arg("tol") = 1e-10);

  // --- conceptual systems -----------------------------------------------------
  py::class_<core::EVariableSystem>(m, "EVariableSystem")
      .def_property_readonly("variable_names",
                             &core::EVariableSystem::variable_names)
      .def_property_readonly(
          "group_order",
          [](const core::EVariableSystem& s) { return s.group().order(); })
      .def_property_readonly(
          "points",
          [](const core::EVariableSystem& s) { return s.space().points; });

  m.def(
      "load_system",
      [](const std::string& path) { return io::load_system(path); },
      py::arg("path"), "Load a conceptual-variable system fixture.");
  m.def(
      "system_from_json",
      [](const std::string& text) {
        return io::system_from_json(io::Json::parse(text));
      },
      py::arg("json_text"));
  m.def(
      "check_permissible",
      [](const core::EVariableSystem& system, const std::string& variable) {
        auto result = core::check_permissible(
            system.variable(system.variable_index(variable)), system.group());
        return result.permissible;
      },
      py::arg("system"), py::arg("variable"));
  m.def(
      "orbits",
      [](const core::EVariableSystem& system) {
        py::list out;
        for (const auto& orbit : core::orbits(system.group())) {
          py::list labels;
          for (int p : orbit) labels.append(system.space().points[p]);
          out.append(labels);
        }
        return out;
      },
      py::arg("system"));
  m.def(
      "is_transitive",
      [](const core::EVariableSystem& system) {
        return core::is_transitive(system.group());
      },
      py::arg("system"));
  m.def(
      "check_generating_assumption",
      [](const core::EVariableSystem& system) {
        auto result = core::check_generating_assumption(system);
        return py::make_tuple(result.generates, result.closure_size);
      },
      py::arg("system"));
  m.def(
      "reconstruction_report",
      [](const std::string& path) {
        auto doc = io::Json::parse(io::read_file(path));
        auto system = io::system_from_json(doc);
        return json_to_py(recon::reconstruction_report(
            system, io::theta0_name(doc),
            std::filesystem::path(path).stem().string()));
      },
      py::arg("path"),
      "Full verification report for a system fixture, as a dict.");

  // --- scenarios --------------------------------------------------------------
  m.def(
      "run_scenario",
      [](const std::string& name) {
        return json_to_py(
            io::scenario_report_to_json(scenario::run_scenario(name)));
      },
      py::arg("name"), "Epistemic-state demo: cat, wigner or two-slit.");
}
