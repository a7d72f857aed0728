#pragma once

#include <string>
#include <vector>

#include "eqm/measure.hpp"

namespace eqm::infer {

/// Probability weights over answer labels.
struct PosteriorDistribution {
  std::vector<std::string> labels;
  std::vector<double> weights;

  PosteriorDistribution(std::vector<std::string> labels_,
                        std::vector<double> weights_);
};

struct CredibilitySet {
  std::vector<std::string> labels;
  double achieved_level = 0.0;
};

struct InferenceReport {
  PosteriorDistribution posterior;
  std::string mle;
  CredibilitySet credibility;
  double requested_level = 0.0;
  int n_observations = 0;
};

/// Posterior over answers after observing one data label x, with the prior
/// taken from the preparation itself: weight(v_j) proportional to
/// q(x|v_j) trace(rho Gamma_j).
PosteriorDistribution posterior_single_shot(const measure::DensityOperator& rho,
                                            const measure::LikelihoodEffect& effect,
                                            const measure::ProjectiveResolution& res,
                                            const std::string& x);

/// Bayes update of a prior over answers under i.i.d. data from the model.
/// Empty data returns the prior unchanged.
PosteriorDistribution posterior_repeated(const PosteriorDistribution& prior,
                                         const measure::StatisticalModel& model,
                                         const std::vector<std::string>& data);

/// Maximum-likelihood answer; ties resolved to the earliest label.
std::string mle(const measure::StatisticalModel& model,
                const std::vector<std::string>& data);

/// Smallest answer set with posterior mass >= level, filled greedily by
/// descending weight (ties by label order).
CredibilitySet credibility_set(const PosteriorDistribution& posterior, double level);

/// Entrywise comparison of two likelihood effects over the same alphabet.
bool effects_equal(const measure::LikelihoodEffect& e1,
                   const measure::LikelihoodEffect& e2, double tol);

InferenceReport make_report(const PosteriorDistribution& posterior,
                            const measure::StatisticalModel& model,
                            const std::vector<std::string>& data, double level);

}  // namespace eqm::infer
