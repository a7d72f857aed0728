#include "eqm/inference.hpp"

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace eqm;
using namespace eqm::infer;
using namespace eqm::measure;
using eqm::spin::Direction;
using eqm::spin::SpinSystem;

namespace {

ProjectiveResolution qubit_z() {
  return resolution_from_direction(SpinSystem(1), Direction(0, 0, 1));
}

PosteriorDistribution uniform_prior(const std::vector<std::string>& labels) {
  return PosteriorDistribution(
      labels, std::vector<double>(labels.size(), 1.0 / labels.size()));
}

}  // namespace

TEST_CASE("single-shot posterior decomposes the born probability") {
  auto res = qubit_z();
  auto mixed = density_from_distribution(res, {0.5, 0.5});

  SUBCASE("noiseless data is conclusive") {
    auto effect = likelihood_effect(StatisticalModel::noiseless(res.labels), res);
    auto posterior = posterior_single_shot(mixed, effect, res, "0.5");
    CHECK(posterior.weights[res.label_index("0.5")] ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(posterior.weights[res.label_index("-0.5")] ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("uniform model leaves the prior untouched") {
    auto effect =
        likelihood_effect(StatisticalModel::uniform(res.labels, res.labels), res);
    auto posterior = posterior_single_shot(mixed, effect, res, "0.5");
    for (int j = 0; j < res.size(); ++j) {
      const double prior =
          (mixed.entries * res.projectors[j].entries).trace().real();
      CHECK(posterior.weights[j] == doctest::Approx(prior).epsilon(1e-12));
    }
  }
  SUBCASE("a prepared eigenstate excludes the other answer even under noise") {
    auto up = DensityOperator::pure(
        spin::question_answer_state(SpinSystem(1), Direction(0, 0, 1), 0.5));
    auto effect =
        likelihood_effect(StatisticalModel::symmetric_noise(res.labels, 0.1), res);
    auto posterior = posterior_single_shot(up, effect, res, "0.5");
    CHECK(posterior.weights[res.label_index("0.5")] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero-probability data is rejected") {
    auto up = DensityOperator::pure(
        spin::question_answer_state(SpinSystem(1), Direction(0, 0, 1), 0.5));
    auto effect = likelihood_effect(StatisticalModel::noiseless(res.labels), res);
    CHECK_THROWS_AS(posterior_single_shot(up, effect, res, "-0.5"), ValidationError);
  }
  SUBCASE("marginalizing over data recovers the preparation weights") {
    auto rng = oracle::rng(13);
    auto model = StatisticalModel::symmetric_noise(res.labels, 0.2);
    auto effect = likelihood_effect(model, res);
    for (int trial = 0; trial < 10; ++trial) {
      auto p = oracle::random_distribution(rng, 2);
      auto rho = density_from_distribution(res, p);
      for (int j = 0; j < res.size(); ++j) {
        double marginal = 0.0;
        for (const auto& x : model.data_alphabet) {
          const double px = born_probability(rho, effect.at(x));
          marginal += px * posterior_single_shot(rho, effect, res, x).weights[j];
        }
        CHECK(std::abs(marginal - p[j]) < 1e-9);
      }
    }
  }
}

TEST_CASE("repeated-data posterior") {
  auto res = qubit_z();
  auto model = StatisticalModel::symmetric_noise(res.labels, 0.1);
  auto prior = uniform_prior(model.value_labels);

  SUBCASE("empty data returns the prior") {
    auto posterior = posterior_repeated(prior, model, {});
    CHECK(posterior.weights == prior.weights);
  }
  SUBCASE("ten agreeing observations match the closed form") {
    std::vector<std::string> data(10, "0.5");
    auto posterior = posterior_repeated(prior, model, data);
    const double expected = std::pow(0.9, 10) / (std::pow(0.9, 10) + std::pow(0.1, 10));
    CHECK(std::abs(posterior.weights[res.label_index("0.5")] - expected) < 1e-12);
  }
  SUBCASE("contradictory data under a delta model is an error") {
    auto delta = StatisticalModel::noiseless(res.labels);
    std::vector<std::string> data{"0.5", "-0.5"};
    CHECK_THROWS_AS(posterior_repeated(prior, delta, data), ValidationError);
  }
  SUBCASE("long runs stay normalized through the log-space path") {
    std::vector<std::string> data(10000, "0.5");
    auto posterior = posterior_repeated(prior, model, data);
    double sum = 0;
    for (double w : posterior.weights) sum += w;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(posterior.weights[res.label_index("0.5")] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("maximum likelihood answer") {
  auto res = qubit_z();
  auto model = StatisticalModel::symmetric_noise(res.labels, 0.1);

  CHECK(mle(model, std::vector<std::string>(10, "0.5")) == "0.5");
  CHECK_THROWS_AS(mle(model, {}), ValidationError);

  SUBCASE("single noiseless observation identifies the answer") {
    auto delta = StatisticalModel::noiseless(res.labels);
    CHECK(mle(delta, {"-0.5"}) == "-0.5");
  }
  SUBCASE("a perfect tie resolves to the earliest label") {
    std::vector<std::string> balanced;
    for (int i = 0; i < 5; ++i) {
      balanced.push_back("0.5");
      balanced.push_back("-0.5");
    }
    CHECK(mle(model, balanced) == model.value_labels.front());
  }
  SUBCASE("consistency: 100 seeded runs at n = 1e4 recover the answer") {
    auto up = DensityOperator::pure(
        spin::question_answer_state(SpinSystem(1), Direction(0, 0, 1), 0.5));
    int correct = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      auto data = sample_data(up, model, res, 10000, seed);
      if (mle(model, data) == "0.5") ++correct;
    }
    CHECK(correct >= 99);
  }
}

TEST_CASE("credibility sets accumulate greedily") {
  SUBCASE("point mass needs a single label") {
    PosteriorDistribution point({"a", "b", "c"}, {0.0, 1.0, 0.0});
    auto set = credibility_set(point, 0.95);
    CHECK(set.labels == std::vector<std::string>{"b"});
    CHECK(set.achieved_level == doctest::Approx(1.0));
  }
  SUBCASE("uniform over four needs two labels for level one half") {
    PosteriorDistribution uniform({"a", "b", "c", "d"}, {0.25, 0.25, 0.25, 0.25});
    CHECK(credibility_set(uniform, 0.5).labels.size() == 2);
  }
  SUBCASE("descending weights fill in order") {
    PosteriorDistribution skewed({"a", "b", "c"}, {0.7, 0.2, 0.1});
    auto set = credibility_set(skewed, 0.85);
    CHECK(set.labels == std::vector<std::string>{"a", "b"});
    CHECK(set.achieved_level == doctest::Approx(0.9));
  }
  SUBCASE("ties keep label order so reruns are identical") {
    PosteriorDistribution tied({"a", "b", "c", "d"}, {0.3, 0.2, 0.2, 0.3});
    auto set = credibility_set(tied, 0.7);
    CHECK(set.labels == std::vector<std::string>{"a", "d", "b"});
  }
  SUBCASE("levels outside (0,1) are rejected") {
    PosteriorDistribution point({"a", "b"}, {1.0, 0.0});
    CHECK_THROWS_AS(credibility_set(point, 0.0), ValidationError);
    CHECK_THROWS_AS(credibility_set(point, 1.0), ValidationError);
  }
  SUBCASE("with a noiseless model one observation pins any level") {
    auto res = qubit_z();
    auto delta = StatisticalModel::noiseless(res.labels);
    auto prior = uniform_prior(delta.value_labels);
    auto posterior = posterior_repeated(prior, delta, {"0.5"});
    for (double level : {0.5, 0.9, 0.999}) {
      auto set = credibility_set(posterior, level);
      CHECK(set.labels == std::vector<std::string>{"0.5"});
    }
  }
}

TEST_CASE("equal likelihood effects imply equal inference") {
  auto res = qubit_z();
  auto model = StatisticalModel::symmetric_noise(res.labels, 0.1);
  auto effect = likelihood_effect(model, res);

  CHECK(effects_equal(effect, effect, 1e-12));

  auto other = likelihood_effect(StatisticalModel::symmetric_noise(res.labels, 0.2), res);
  CHECK_FALSE(effects_equal(effect, other, 1e-9));

  SUBCASE("two construction routes to the same effect agree everywhere") {
    // Same numbers via an explicit table instead of the noise builder.
    Eigen::MatrixXd q(2, 2);
    const int plus = res.label_index("0.5");
    const int minus = res.label_index("-0.5");
    q(plus, plus) = 0.9;
    q(minus, plus) = 0.1;
    q(plus, minus) = 0.1;
    q(minus, minus) = 0.9;
    StatisticalModel table_model(res.labels, res.labels, q);
    auto effect2 = likelihood_effect(table_model, res);
    CHECK(effects_equal(effect, effect2, 1e-12));

    auto prior = uniform_prior(model.value_labels);
    std::vector<std::string> data{"0.5", "0.5", "-0.5", "0.5"};
    auto report1 = make_report(posterior_repeated(prior, model, data), model, data, 0.9);
    auto report2 =
        make_report(posterior_repeated(prior, table_model, data), table_model, data, 0.9);
    CHECK(report1.posterior.weights == report2.posterior.weights);
    CHECK(report1.mle == report2.mle);
    CHECK(report1.credibility.labels == report2.credibility.labels);
  }
  SUBCASE("shape mismatch is rejected") {
    auto res_x = resolution_from_direction(SpinSystem(1), Direction(1, 0, 0));
    auto other_labels =
        likelihood_effect(StatisticalModel::noiseless({"a", "b"}),
                          ProjectiveResolution(res_x.projectors, {"a", "b"}));
    CHECK_THROWS_AS(effects_equal(effect, other_labels, 1e-9), ValidationError);
  }
}
