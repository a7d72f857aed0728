#include "eqm/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace eqm::recon {

ComplexVector FunctionSpaceBasis::project(const ComplexVector& ambient) const {
  return basis * (basis.adjoint() * ambient);
}

FunctionSpaceBasis build_hilbert_space(const core::FiniteSpace& space,
                                       const core::EVariableMap& theta0) {
  if (theta0.domain.points != space.points)
    throw ValidationError("theta0 domain does not match the space");
  FunctionSpaceBasis h;
  h.ambient_dim = space.size();
  h.value_labels = theta0.values;
  h.level_sets = theta0.level_sets();
  h.basis = ComplexMatrix::Zero(h.ambient_dim, theta0.value_count());
  for (int k = 0; k < theta0.value_count(); ++k) {
    const auto& level = h.level_sets[k];
    const double amp = 1.0 / std::sqrt(static_cast<double>(level.size()));
    for (int p : level) h.basis(p, k) = amp;
  }
  return h;
}

RegularRepresentation::RegularRepresentation(const core::FiniteGroupAction& action) {
  perm_.resize(action.order());
  for (int k = 0; k < action.order(); ++k) {
    perm_[k].resize(action.space().size());
    for (int p = 0; p < action.space().size(); ++p) perm_[k][p] = action.act(k, p);
  }
  // Representation property, exact on the permutation tables.
  for (int k1 = 0; k1 < action.order(); ++k1)
    for (int k2 = 0; k2 < action.order(); ++k2)
      for (int p = 0; p < action.space().size(); ++p)
        if (perm_[k1][perm_[k2][p]] !=
            perm_[action.compose(k1, k2)][p])
          throw ValidationError("regular representation property failed");
}

ComplexMatrix RegularRepresentation::matrix(int k) const {
  const int n = ambient_dim();
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p) u(perm_[k][p], p) = 1.0;
  return u;
}

RegularRepresentation regular_representation(const core::FiniteGroupAction& action) {
  return RegularRepresentation(action);
}

StateConstruction construct_state(const core::EVariableSystem& system, int theta0,
                                  const FunctionSpaceBasis& h,
                                  const RegularRepresentation& rep, int a, int k) {
  StateConstruction out;
  if (a < 0 || a >= system.variable_count() || theta0 < 0 ||
      theta0 >= system.variable_count())
    throw ValidationError("variable index out of range");
  if (k < 0 || k >= h.dim()) throw ValidationError("answer index out of range");
  ComplexVector e_k = h.basis.col(k);
  if (a == theta0) {
    out.ok = true;
    out.state = e_k;
    out.projection_norm = 1.0;
    return out;
  }
  auto k0a = system.connector(theta0, a);
  if (!k0a)
    throw ValidationError("missing connector from " +
                          system.variable_names()[theta0] + " to " +
                          system.variable_names()[a]);
  const int transport = system.group().inverse(*k0a);
  ComplexVector moved = ComplexVector::Zero(h.ambient_dim);
  for (int p = 0; p < h.ambient_dim; ++p)
    moved(rep.permute(transport, p)) = e_k(p);
  ComplexVector projected = h.project(moved);
  out.projection_norm = projected.norm();
  if (out.projection_norm < 1e-9) return out;  // construction inapplicable
  out.ok = true;
  out.state = projected / out.projection_norm;
  return out;
}

namespace {

std::vector<int> indicator_of(const core::EVariableMap& theta, int value_index) {
  std::vector<int> ind(theta.assign.size(), 0);
  for (size_t p = 0; p < theta.assign.size(); ++p)
    ind[p] = theta.assign[p] == value_index ? 1 : 0;
  return ind;
}

}  // namespace

QuestionAnswerReport verify_question_answer_states(const core::EVariableSystem& system, int theta0,
                               const QuestionAnswerTolerances& tol) {
  QuestionAnswerReport report;
  auto h = build_hilbert_space(system.space(), system.variable(theta0));
  auto rep = regular_representation(system.group());
  const int d = h.dim();

  struct Entry {
    int variable;
    int answer;
    ComplexVector state;
    std::vector<int> indicator;
  };
  std::vector<Entry> entries;

  for (int a = 0; a < system.variable_count(); ++a) {
    OrthonormalityCheck check;
    check.variable = system.variable_names()[a];
    check.constructed = true;
    std::vector<ComplexVector> states;
    for (int k = 0; k < d; ++k) {
      StateConstruction sc;
      try {
        sc = construct_state(system, theta0, h, rep, a, k);
      } catch (const ValidationError&) {
        sc.ok = false;
      }
      if (!sc.ok) {
        check.constructed = false;
        break;
      }
      states.push_back(sc.state);
      // Answer labels of theta_a follow theta0's value order via the
      // shared label set.
      const int value_index = static_cast<int>(
          std::find(system.variable(a).values.begin(),
                    system.variable(a).values.end(), h.value_labels[k]) -
          system.variable(a).values.begin());
      entries.push_back(
          {a, k, sc.state,
           value_index < system.variable(a).value_count()
               ? indicator_of(system.variable(a), value_index)
               : std::vector<int>(system.space().size(), 0)});
    }
    if (check.constructed) {
      ComplexMatrix gram(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) gram(i, j) = states[i].dot(states[j]);
      check.gram_residual = identity_residual(gram);
      check.ok = check.gram_residual < tol.orthonormality;
    }
    report.orthonormality.push_back(check);
  }

  for (const auto& entry : entries)
    report.states.push_back({system.variable_names()[entry.variable],
                             entry.answer, entry.state});
  report.overlap_moduli.assign(entries.size(),
                               std::vector<double>(entries.size(), 0.0));
  for (size_t i = 0; i < entries.size(); ++i)
    for (size_t j = 0; j < entries.size(); ++j)
      report.overlap_moduli[i][j] =
          std::abs(entries[i].state.dot(entries[j].state));

  report.distinct_ok = true;
  for (size_t i = 0; i < entries.size(); ++i) {
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].variable == entries[j].variable) continue;
      const double overlap = std::abs(entries[i].state.dot(entries[j].state));
      OverlapWitness witness{system.variable_names()[entries[i].variable],
                             entries[i].answer,
                             system.variable_names()[entries[j].variable],
                             entries[j].answer, overlap, false};
      if (entries[i].indicator == entries[j].indicator) {
        // Same question-answer event in both labelings; equality here is
        // the trivial case, not a violation.
        witness.same_indicator = true;
        report.trivial_coincidences.push_back(witness);
        continue;
      }
      report.max_cross_overlap = std::max(report.max_cross_overlap, overlap);
      if (overlap >= 1.0 - tol.distinctness) {
        report.distinct_ok = false;
        report.violations.push_back(witness);
      }
    }
  }

  report.pass = report.distinct_ok;
  for (const auto& check : report.orthonormality)
    report.pass = report.pass && check.ok;
  return report;
}

ComplexMatrix operator_from_states(const std::vector<double>& values,
                                   const std::vector<ComplexVector>& states) {
  if (values.empty() || values.size() != states.size())
    throw ValidationError("need one value per state");
  const auto d = states.front().size();
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != d) throw ValidationError("state dimension mismatch");
    for (size_t j = 0; j < states.size(); ++j) {
      const Complex g = states[i].dot(states[j]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-9)
        throw ValidationError("states must be orthonormal");
    }
  }
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (size_t k = 0; k < states.size(); ++k)
    a += values[k] * (states[k] * states[k].adjoint());
  return a;
}

SpectrumComparison eigenvalue_value_coincidence(const ComplexMatrix& a,
                                                std::vector<double> declared,
                                                double tol) {
  if (!is_hermitian(a, 1e-10))
    throw ValidationError("operator must be Hermitian");
  SpectrumComparison out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  out.spectrum.assign(es.eigenvalues().data(),
                      es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(declared.begin(), declared.end());
  out.declared = std::move(declared);
  out.coincide = out.spectrum.size() == out.declared.size();
  if (out.coincide)
    for (size_t i = 0; i < out.spectrum.size(); ++i)
      out.coincide = out.coincide && std::abs(out.spectrum[i] - out.declared[i]) <= tol;
  return out;
}

RestrictedRepresentation restrict_representation(const RegularRepresentation& rep,
                                                 const FunctionSpaceBasis& h) {
  RestrictedRepresentation out;
  out.unitary = true;
  for (int k = 0; k < rep.order(); ++k) {
    ComplexMatrix u = h.basis.adjoint() * rep.matrix(k) * h.basis;
    out.unitarity_residual = std::max(
        out.unitarity_residual, identity_residual(u.adjoint() * u));
    out.matrices.push_back(std::move(u));
  }
  out.unitary = out.unitarity_residual < 1e-10;
  return out;
}

GroupAverage group_average_identity(const RestrictedRepresentation& rep,
                                    const ComplexVector& fiducial, double tol) {
  const auto d = fiducial.size();
  if (std::abs(fiducial.squaredNorm() - 1.0) > 1e-10)
    throw ValidationError("fiducial must be a unit vector");
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& u : rep.matrices) {
    ComplexVector moved = u * fiducial;
    s += moved * moved.adjoint();
  }
  GroupAverage out;
  out.lambda = s.trace().real() / static_cast<double>(d);
  out.residual =
      (s - out.lambda * ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  out.proportional = out.residual < tol;
  return out;
}

}  // namespace eqm::recon
