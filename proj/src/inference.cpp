#include "eqm/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eqm::infer {

PosteriorDistribution::PosteriorDistribution(std::vector<std::string> labels_,
                                             std::vector<double> weights_)
    : labels(std::move(labels_)), weights(std::move(weights_)) {
  if (labels.empty() || labels.size() != weights.size())
    throw ValidationError("posterior needs one weight per label");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("posterior weights must be >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("posterior weights must sum to 1");
}

PosteriorDistribution posterior_single_shot(const measure::DensityOperator& rho,
                                            const measure::LikelihoodEffect& effect,
                                            const measure::ProjectiveResolution& res,
                                            const std::string& x) {
  const ComplexMatrix& l = effect.at(x);
  const double px = (rho.entries * l).trace().real();
  if (px <= 1e-12)
    throw ValidationError("observed data has zero probability under rho");

  std::vector<double> weights(res.size());
  double sum = 0.0;
  for (int j = 0; j < res.size(); ++j) {
    const auto& gamma = res.projectors[j].entries;
    const double prior = (rho.entries * gamma).trace().real();
    // q(x|v_j) recovered from the effect: trace(L Gamma_j) = q tr(Gamma_j).
    const double qxj =
        (l * gamma).trace().real() / res.projectors[j].rank();
    weights[j] = std::max(qxj * prior, 0.0);
    sum += weights[j];
  }
  for (double& w : weights) w /= sum;
  return PosteriorDistribution(res.labels, weights);
}

PosteriorDistribution posterior_repeated(const PosteriorDistribution& prior,
                                         const measure::StatisticalModel& model,
                                         const std::vector<std::string>& data) {
  if (prior.labels != model.value_labels)
    throw ValidationError("prior labels must match the model answers");
  if (data.empty()) return prior;

  const int m = static_cast<int>(prior.labels.size());
  std::vector<double> log_w(m);
  for (int j = 0; j < m; ++j)
    log_w[j] = prior.weights[j] > 0.0 ? std::log(prior.weights[j])
                                      : -std::numeric_limits<double>::infinity();
  for (const auto& x : data) {
    const int xi = model.data_index(x);
    for (int j = 0; j < m; ++j) {
      const double q = model.prob(xi, j);
      log_w[j] += q > 0.0 ? std::log(q) : -std::numeric_limits<double>::infinity();
    }
  }
  const double peak = *std::max_element(log_w.begin(), log_w.end());
  if (!std::isfinite(peak))
    throw ValidationError("data is impossible under every answer: model/data mismatch");

  std::vector<double> weights(m);
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    weights[j] = std::exp(log_w[j] - peak);
    sum += weights[j];
  }
  for (double& w : weights) w /= sum;
  return PosteriorDistribution(prior.labels, weights);
}

std::string mle(const measure::StatisticalModel& model,
                const std::vector<std::string>& data) {
  if (data.empty()) throw ValidationError("MLE needs at least one observation");
  const int m = static_cast<int>(model.value_labels.size());
  std::vector<double> log_lik(m, 0.0);
  for (const auto& x : data) {
    const int xi = model.data_index(x);
    for (int j = 0; j < m; ++j) {
      const double q = model.prob(xi, j);
      log_lik[j] += q > 0.0 ? std::log(q) : -std::numeric_limits<double>::infinity();
    }
  }
  int best = 0;
  for (int j = 1; j < m; ++j)
    if (log_lik[j] > log_lik[best]) best = j;  // ties keep the earliest label
  return model.value_labels[best];
}

CredibilitySet credibility_set(const PosteriorDistribution& posterior, double level) {
  if (level <= 0.0 || level >= 1.0)
    throw ValidationError("credibility level must lie in (0,1)");
  std::vector<int> order(posterior.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return posterior.weights[a] > posterior.weights[b];
  });
  CredibilitySet out;
  for (int idx : order) {
    out.labels.push_back(posterior.labels[idx]);
    out.achieved_level += posterior.weights[idx];
    if (out.achieved_level >= level) break;
  }
  return out;
}

bool effects_equal(const measure::LikelihoodEffect& e1,
                   const measure::LikelihoodEffect& e2, double tol) {
  if (e1.data_alphabet != e2.data_alphabet || e1.dim() != e2.dim())
    throw ValidationError("effects must share alphabet and dimension");
  for (size_t i = 0; i < e1.ops.size(); ++i)
    if ((e1.ops[i] - e2.ops[i]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

InferenceReport make_report(const PosteriorDistribution& posterior,
                            const measure::StatisticalModel& model,
                            const std::vector<std::string>& data, double level) {
  InferenceReport report{posterior,
                         data.empty() ? posterior.labels.front() : mle(model, data),
                         credibility_set(posterior, level), level,
                         static_cast<int>(data.size())};
  if (data.empty()) {
    // No likelihood to maximize; report the posterior mode instead.
    int best = 0;
    for (size_t j = 1; j < posterior.weights.size(); ++j)
      if (posterior.weights[j] > posterior.weights[best])
        best = static_cast<int>(j);
    report.mle = posterior.labels[best];
  }
  return report;
}

}  // namespace eqm::infer
