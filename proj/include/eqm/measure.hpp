#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqm/linalg.hpp"
#include "eqm/spin.hpp"

namespace eqm::measure {

/// Orthogonal projector: Hermitian, idempotent, integer-rank trace.
struct Projector {
  ComplexMatrix entries;

  explicit Projector(ComplexMatrix m);
  static Projector onto(const ComplexVector& unit_ket);

  int dim() const { return static_cast<int>(entries.rows()); }
  int rank() const;
};

/// Ordered family of pairwise-orthogonal projectors summing to the identity,
/// one per answer label.
struct ProjectiveResolution {
  std::vector<Projector> projectors;
  std::vector<std::string> labels;

  ProjectiveResolution(std::vector<Projector> projectors_,
                       std::vector<std::string> labels_);

  int dim() const { return projectors.front().dim(); }
  int size() const { return static_cast<int>(projectors.size()); }
  int label_index(const std::string& label) const;
  /// True when any projector has rank > 1 (merged eigenspaces).
  bool has_degenerate_answer() const;
};

/// Hermitian, positive semidefinite, unit trace.
struct DensityOperator {
  ComplexMatrix entries;

  explicit DensityOperator(ComplexMatrix m);
  static DensityOperator pure(const ComplexVector& unit_ket);

  int dim() const { return static_cast<int>(entries.rows()); }
};

/// Point probabilities q(x | v_j) over a finite data alphabet; for each
/// answer v_j the column over x sums to one.
struct StatisticalModel {
  std::vector<std::string> data_alphabet;
  std::vector<std::string> value_labels;
  Eigen::MatrixXd q;  // (data, value)

  StatisticalModel(std::vector<std::string> data_alphabet_,
                   std::vector<std::string> value_labels_, Eigen::MatrixXd q_);

  /// Ideal measurement: data alphabet equals the answer labels, q = identity.
  static StatisticalModel noiseless(const std::vector<std::string>& labels);
  /// Correct answer reported with probability 1-epsilon, the rest split evenly.
  static StatisticalModel symmetric_noise(const std::vector<std::string>& labels,
                                          double epsilon);
  /// q(x|v) = 1/|alphabet| regardless of the answer.
  static StatisticalModel uniform(const std::vector<std::string>& alphabet,
                                  const std::vector<std::string>& labels);

  int data_index(const std::string& x) const;
  double prob(int data, int value) const { return q(data, value); }
};

/// L(x) = sum_j q(x|v_j) Gamma_j, one positive operator per data label;
/// the family sums to the identity.
struct LikelihoodEffect {
  std::vector<std::string> data_alphabet;
  std::vector<ComplexMatrix> ops;

  LikelihoodEffect(std::vector<std::string> data_alphabet_,
                   std::vector<ComplexMatrix> ops_);

  int dim() const { return static_cast<int>(ops.front().rows()); }
  const ComplexMatrix& at(const std::string& x) const;
};

/// rho = sum_k p_k Gamma_k for a probability vector p over the resolution.
DensityOperator density_from_distribution(const ProjectiveResolution& res,
                                          const std::vector<double>& p);

/// Eigenspace projectors of the spin component operator along b, labeled by
/// eigenvalue. Eigenvalues closer than degeneracy_tol share one projector.
ProjectiveResolution resolution_from_direction(const spin::SpinSystem& system,
                                               const spin::Direction& b,
                                               double degeneracy_tol = 1e-8);

/// Eigenspace resolution of an arbitrary Hermitian operator.
ProjectiveResolution resolution_from_operator(const ComplexMatrix& op,
                                              double degeneracy_tol = 1e-8);

/// Rank-one resolution from an orthonormal family spanning the space.
ProjectiveResolution resolution_from_states(const std::vector<ComplexVector>& states,
                                            const std::vector<std::string>& labels);

/// A = sum_j v_j Gamma_j with distinct real answer values v_j.
ComplexMatrix observable_operator(const ProjectiveResolution& res,
                                  const std::vector<double>& values);

/// Mixes a statistical model with the resolution's projectors. Model value
/// labels must match the resolution labels as a set.
LikelihoodEffect likelihood_effect(const StatisticalModel& model,
                                   const ProjectiveResolution& res);

/// M(C) = sum_{x in C} L(x).
ComplexMatrix povm_element(const LikelihoodEffect& effect,
                           const std::vector<std::string>& subset);

/// trace(rho M), clamped to [0,1] within 1e-10 slack only.
double born_probability(const DensityOperator& rho, const ComplexMatrix& m);

/// P(x) = trace(rho L(x)) for every data label.
std::vector<double> outcome_distribution(const DensityOperator& rho,
                                         const LikelihoodEffect& effect);

/// n i.i.d. data labels drawn from trace(rho L(x)); deterministic per seed.
std::vector<std::string> sample_data(const DensityOperator& rho,
                                     const StatisticalModel& model,
                                     const ProjectiveResolution& res, int n,
                                     std::uint64_t seed);

/// Post-measurement conditioning Gamma rho Gamma / trace(rho Gamma).
DensityOperator lueders_update(const DensityOperator& rho, const Projector& gamma);

}  // namespace eqm::measure
