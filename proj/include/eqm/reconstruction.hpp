#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqm/group.hpp"
#include "eqm/linalg.hpp"

namespace eqm::recon {

/// Basis of the subspace of functions on the points that factor through a
/// designated e-variable: one normalized level-set indicator per value.
struct FunctionSpaceBasis {
  int ambient_dim = 0;
  std::vector<std::string> value_labels;
  ComplexMatrix basis;  // ambient_dim x d, orthonormal columns
  std::vector<std::vector<int>> level_sets;

  int dim() const { return static_cast<int>(basis.cols()); }
  /// Projection of an ambient vector onto the subspace (coefficients stay
  /// in the ambient space).
  ComplexVector project(const ComplexVector& ambient) const;
};

/// Left-regular permutation unitaries: (U(k) f)(p) = f(k^{-1} p).
class RegularRepresentation {
public:
  explicit RegularRepresentation(const core::FiniteGroupAction& action);

  int ambient_dim() const { return static_cast<int>(perm_.front().size()); }
  int order() const { return static_cast<int>(perm_.size()); }
  /// U(k) maps the point-indicator at p to the indicator at k p.
  int permute(int k, int point) const { return perm_[k][point]; }
  ComplexMatrix matrix(int k) const;

private:
  std::vector<std::vector<int>> perm_;
};

FunctionSpaceBasis build_hilbert_space(const core::FiniteSpace& space,
                                       const core::EVariableMap& theta0);

RegularRepresentation regular_representation(const core::FiniteGroupAction& action);

struct StateConstruction {
  bool ok = false;
  ComplexVector state;          // in ambient coordinates, unit norm when ok
  double projection_norm = 0.0; // before normalization
};

/// Candidate question-answer vector for variable a, answer index k:
/// normalize(P_H U(k_0a^{-1}) e_k). For the designated variable itself this
/// is e_k exactly. Fails when the projection norm drops below 1e-9 or the
/// connector is missing.
StateConstruction construct_state(const core::EVariableSystem& system, int theta0,
                                  const FunctionSpaceBasis& h,
                                  const RegularRepresentation& rep, int a, int k);

struct OrthonormalityCheck {
  std::string variable;
  double gram_residual = 0.0;
  bool ok = false;
  bool constructed = false;  // false when some state construction failed
};

struct OverlapWitness {
  std::string variable_a;
  int answer_a = 0;
  std::string variable_b;
  int answer_b = 0;
  double overlap = 0.0;
  /// True when the two indicator functions coincide pointwise, so equality
  /// of the vectors is the trivial case rather than a violation.
  bool same_indicator = false;
};

struct CandidateState {
  std::string variable;
  int answer = 0;
  ComplexVector state;  // ambient coordinates
};

struct QuestionAnswerReport {
  std::vector<OrthonormalityCheck> orthonormality;
  std::vector<CandidateState> states;  // every successfully constructed vector
  /// Overlap moduli |<i|j>| between all constructed states, indexed like
  /// `states` (same-variable entries are the Gram moduli).
  std::vector<std::vector<double>> overlap_moduli;
  double max_cross_overlap = 0.0;  // over pairs with distinct indicators
  bool distinct_ok = false;
  std::vector<OverlapWitness> violations;  // distinctness failures
  std::vector<OverlapWitness> trivial_coincidences;
  bool pass = false;
};

struct QuestionAnswerTolerances {
  double orthonormality = 1e-9;
  double distinctness = 1e-9;  // require overlap < 1 - distinctness
};

/// Checks the question-answer construction on every variable of the system:
/// per-variable orthonormality and cross-question distinctness. Failures are
/// reported with witnesses, never thrown.
QuestionAnswerReport verify_question_answer_states(const core::EVariableSystem& system, int theta0,
                               const QuestionAnswerTolerances& tol = {});

/// A = sum_k u_k |k><k| over an orthonormal family.
ComplexMatrix operator_from_states(const std::vector<double>& values,
                                   const std::vector<ComplexVector>& states);

struct SpectrumComparison {
  bool coincide = false;
  std::vector<double> spectrum;
  std::vector<double> declared;
};

/// True when the sorted spectrum equals the sorted declared values within tol.
SpectrumComparison eigenvalue_value_coincidence(const ComplexMatrix& a,
                                                std::vector<double> declared,
                                                double tol = 1e-9);

struct RestrictedRepresentation {
  std::vector<ComplexMatrix> matrices;  // d x d, one per group element
  bool unitary = false;     // false when the subspace is not invariant
  double unitarity_residual = 0.0;
};

/// Compression B^dagger U(k) B of the regular representation onto the basis
/// columns; unitary exactly when the subspace is invariant under the group.
RestrictedRepresentation restrict_representation(const RegularRepresentation& rep,
                                                 const FunctionSpaceBasis& h);

struct GroupAverage {
  bool proportional = false;
  double lambda = 0.0;    // trace(S)/d, the best proportionality constant
  double residual = 0.0;  // max entry of |S - lambda I|
};

/// S = sum_k U_H(k) |f><f| U_H(k)^dagger for a unit fiducial f in the
/// restricted space. Proportionality to the identity within 1e-8 yields
/// lambda; otherwise the residual is reported.
GroupAverage group_average_identity(const RestrictedRepresentation& rep,
                                    const ComplexVector& fiducial,
                                    double tol = 1e-8);

}  // namespace eqm::recon
