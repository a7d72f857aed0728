#include "eqm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace eqm::measure {

namespace {

// 53-bit uniform double in [0,1); bit-stable for a fixed seed everywhere.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b).trace().real();
}

}  // namespace

Projector::Projector(ComplexMatrix m) : entries(std::move(m)) {
  if (!is_hermitian(entries, 1e-12))
    throw ValidationError("projector must be Hermitian");
  if ((entries * entries - entries).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("projector must be idempotent");
  const double tr = entries.trace().real();
  if (std::abs(tr - std::round(tr)) > 1e-9)
    throw ValidationError("projector trace must be an integer rank");
}

Projector Projector::onto(const ComplexVector& unit_ket) {
  return Projector(unit_ket * unit_ket.adjoint());
}

int Projector::rank() const {
  return static_cast<int>(std::lround(entries.trace().real()));
}

ProjectiveResolution::ProjectiveResolution(std::vector<Projector> projectors_,
                                           std::vector<std::string> labels_)
    : projectors(std::move(projectors_)), labels(std::move(labels_)) {
  if (projectors.empty()) throw ValidationError("resolution needs projectors");
  if (projectors.size() != labels.size())
    throw ValidationError("resolution needs one label per projector");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw ValidationError("resolution labels must be distinct");

  const int d = projectors.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].dim() != d)
      throw ValidationError("resolution projectors must share one dimension");
    for (size_t j = i + 1; j < projectors.size(); ++j) {
      if ((projectors[i].entries * projectors[j].entries).cwiseAbs().maxCoeff() >
          1e-10)
        throw ValidationError("resolution projectors must be pairwise orthogonal");
    }
    sum += projectors[i].entries;
  }
  if (identity_residual(sum) > 1e-10)
    throw ValidationError("resolution projectors must sum to the identity");
}

int ProjectiveResolution::label_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ValidationError("unknown answer label: " + label);
  return static_cast<int>(it - labels.begin());
}

bool ProjectiveResolution::has_degenerate_answer() const {
  return std::any_of(projectors.begin(), projectors.end(),
                     [](const Projector& p) { return p.rank() > 1; });
}

DensityOperator::DensityOperator(ComplexMatrix m) : entries(std::move(m)) {
  if (!is_hermitian(entries, 1e-12))
    throw ValidationError("density operator must be Hermitian");
  if (std::abs(entries.trace().real() - 1.0) > 1e-10)
    throw ValidationError("density operator must have unit trace");
  if (min_eigenvalue(entries) < -1e-10)
    throw ValidationError("density operator must be positive semidefinite");
}

DensityOperator DensityOperator::pure(const ComplexVector& unit_ket) {
  return DensityOperator(unit_ket * unit_ket.adjoint());
}

StatisticalModel::StatisticalModel(std::vector<std::string> data_alphabet_,
                                   std::vector<std::string> value_labels_,
                                   Eigen::MatrixXd q_)
    : data_alphabet(std::move(data_alphabet_)),
      value_labels(std::move(value_labels_)),
      q(std::move(q_)) {
  if (data_alphabet.empty() || value_labels.empty())
    throw ValidationError("model needs a data alphabet and value labels");
  std::set<std::string> seen(data_alphabet.begin(), data_alphabet.end());
  if (seen.size() != data_alphabet.size())
    throw ValidationError("data labels must be distinct");
  if (q.rows() != static_cast<Eigen::Index>(data_alphabet.size()) ||
      q.cols() != static_cast<Eigen::Index>(value_labels.size()))
    throw ValidationError("model table shape mismatch");
  if (q.minCoeff() < 0.0) throw ValidationError("model probabilities must be >= 0");
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    if (std::abs(q.col(j).sum() - 1.0) > 1e-12)
      throw ValidationError("model column for " + value_labels[j] +
                            " must sum to 1");
}

StatisticalModel StatisticalModel::noiseless(const std::vector<std::string>& labels) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  return StatisticalModel(labels, labels, Eigen::MatrixXd::Identity(m, m));
}

StatisticalModel StatisticalModel::symmetric_noise(
    const std::vector<std::string>& labels, double epsilon) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  if (m < 2) throw ValidationError("symmetric noise needs at least two answers");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ValidationError("epsilon must lie in [0,1]");
  Eigen::MatrixXd q(m, m);
  q.setConstant(epsilon / static_cast<double>(m - 1));
  q.diagonal().setConstant(1.0 - epsilon);
  return StatisticalModel(labels, labels, q);
}

StatisticalModel StatisticalModel::uniform(const std::vector<std::string>& alphabet,
                                           const std::vector<std::string>& labels) {
  Eigen::MatrixXd q(alphabet.size(), labels.size());
  q.setConstant(1.0 / static_cast<double>(alphabet.size()));
  return StatisticalModel(alphabet, labels, q);
}

int StatisticalModel::data_index(const std::string& x) const {
  auto it = std::find(data_alphabet.begin(), data_alphabet.end(), x);
  if (it == data_alphabet.end()) throw ValidationError("unknown data label: " + x);
  return static_cast<int>(it - data_alphabet.begin());
}

LikelihoodEffect::LikelihoodEffect(std::vector<std::string> data_alphabet_,
                                   std::vector<ComplexMatrix> ops_)
    : data_alphabet(std::move(data_alphabet_)), ops(std::move(ops_)) {
  if (ops.empty() || ops.size() != data_alphabet.size())
    throw ValidationError("likelihood effect needs one operator per data label");
  const auto d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& l : ops) {
    if (!is_hermitian(l, 1e-10))
      throw ValidationError("likelihood operators must be Hermitian");
    if (min_eigenvalue(l) < -1e-10)
      throw ValidationError("likelihood operators must be positive semidefinite");
    sum += l;
  }
  if (identity_residual(sum) > 1e-10)
    throw ValidationError("likelihood operators must sum to the identity");
}

const ComplexMatrix& LikelihoodEffect::at(const std::string& x) const {
  auto it = std::find(data_alphabet.begin(), data_alphabet.end(), x);
  if (it == data_alphabet.end()) throw ValidationError("unknown data label: " + x);
  return ops[it - data_alphabet.begin()];
}

DensityOperator density_from_distribution(const ProjectiveResolution& res,
                                          const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != res.size())
    throw ValidationError("distribution length must match the resolution");
  double sum = 0.0;
  for (double w : p) {
    if (w < 0.0) throw ValidationError("distribution entries must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw ValidationError("distribution must sum to 1");

  ComplexMatrix rho = ComplexMatrix::Zero(res.dim(), res.dim());
  for (int k = 0; k < res.size(); ++k) {
    // Weight spread over the eigenspace so rank-r answers stay unit-trace.
    rho += (p[k] / res.projectors[k].rank()) * res.projectors[k].entries;
  }
  return DensityOperator(rho);
}

ProjectiveResolution resolution_from_operator(const ComplexMatrix& op,
                                              double degeneracy_tol) {
  auto es = spin::eigensystem(op, degeneracy_tol);
  std::vector<Projector> projectors;
  std::vector<std::string> labels;
  size_t i = 0;
  while (i < es.pairs.size()) {
    size_t j = i;
    ComplexMatrix p = ComplexMatrix::Zero(op.rows(), op.cols());
    while (j < es.pairs.size() &&
           es.pairs[j].value - es.pairs[i].value < degeneracy_tol) {
      p += es.pairs[j].vector * es.pairs[j].vector.adjoint();
      ++j;
    }
    projectors.emplace_back(p);
    labels.push_back(format_value(es.pairs[i].value));
    i = j;
  }
  return ProjectiveResolution(std::move(projectors), std::move(labels));
}

ProjectiveResolution resolution_from_direction(const spin::SpinSystem& system,
                                               const spin::Direction& b,
                                               double degeneracy_tol) {
  return resolution_from_operator(component_operator(system, b), degeneracy_tol);
}

ProjectiveResolution resolution_from_states(const std::vector<ComplexVector>& states,
                                            const std::vector<std::string>& labels) {
  std::vector<Projector> projectors;
  for (const auto& s : states) projectors.push_back(Projector::onto(s));
  return ProjectiveResolution(std::move(projectors), labels);
}

ComplexMatrix observable_operator(const ProjectiveResolution& res,
                                  const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != res.size())
    throw ValidationError("need one value per projector");
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw ValidationError("observable values must be distinct");
  ComplexMatrix a = ComplexMatrix::Zero(res.dim(), res.dim());
  for (int k = 0; k < res.size(); ++k) a += values[k] * res.projectors[k].entries;
  return a;
}

LikelihoodEffect likelihood_effect(const StatisticalModel& model,
                                   const ProjectiveResolution& res) {
  if (model.value_labels.size() != res.labels.size())
    throw ValidationError("model answers do not match the resolution");
  std::vector<int> column(res.size());
  for (int k = 0; k < res.size(); ++k) {
    auto it = std::find(model.value_labels.begin(), model.value_labels.end(),
                        res.labels[k]);
    if (it == model.value_labels.end())
      throw ValidationError("model lacks answer label " + res.labels[k]);
    column[k] = static_cast<int>(it - model.value_labels.begin());
  }
  std::vector<ComplexMatrix> ops;
  for (size_t x = 0; x < model.data_alphabet.size(); ++x) {
    ComplexMatrix l = ComplexMatrix::Zero(res.dim(), res.dim());
    for (int k = 0; k < res.size(); ++k)
      l += model.q(x, column[k]) * res.projectors[k].entries;
    ops.push_back(std::move(l));
  }
  return LikelihoodEffect(model.data_alphabet, std::move(ops));
}

ComplexMatrix povm_element(const LikelihoodEffect& effect,
                           const std::vector<std::string>& subset) {
  ComplexMatrix m = ComplexMatrix::Zero(effect.dim(), effect.dim());
  std::set<std::string> seen;
  for (const auto& x : subset) {
    if (!seen.insert(x).second)
      throw ValidationError("data subset has duplicate label " + x);
    m += effect.at(x);
  }
  return m;
}

double born_probability(const DensityOperator& rho, const ComplexMatrix& m) {
  if (m.rows() != rho.entries.rows() || m.cols() != rho.entries.cols())
    throw ValidationError("operator dimension mismatch");
  if (!is_hermitian(m, 1e-10))
    throw ValidationError("measurement operator must be Hermitian");
  const double p = real_trace_product(rho.entries, m);
  if (p < -1e-10 || p > 1.0 + 1e-10)
    throw ValidationError("trace(rho M) outside [0,1]: invalid inputs");
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> outcome_distribution(const DensityOperator& rho,
                                         const LikelihoodEffect& effect) {
  std::vector<double> p;
  p.reserve(effect.ops.size());
  for (const auto& l : effect.ops)
    p.push_back(std::clamp(real_trace_product(rho.entries, l), 0.0, 1.0));
  return p;
}

std::vector<std::string> sample_data(const DensityOperator& rho,
                                     const StatisticalModel& model,
                                     const ProjectiveResolution& res, int n,
                                     std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample count must be >= 1");
  auto effect = likelihood_effect(model, res);
  auto p = outcome_distribution(rho, effect);
  std::vector<double> cumulative(p.size());
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::vector<std::string> draws;
  draws.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = next_uniform(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto idx = std::min<size_t>(it - cumulative.begin(), p.size() - 1);
    draws.push_back(effect.data_alphabet[idx]);
  }
  return draws;
}

DensityOperator lueders_update(const DensityOperator& rho, const Projector& gamma) {
  const double p = real_trace_product(rho.entries, gamma.entries);
  if (p <= 1e-12)
    throw ValidationError("cannot condition on a zero-probability answer");
  ComplexMatrix updated = gamma.entries * rho.entries * gamma.entries / p;
  // Symmetrize away the last bits of roundoff.
  updated = 0.5 * (updated + updated.adjoint()).eval();
  return DensityOperator(updated);
}

}  // namespace eqm::measure
