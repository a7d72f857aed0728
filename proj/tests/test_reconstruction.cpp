#include "eqm/reconstruction.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "eqm/report.hpp"
#include "eqm/serialize.hpp"
#include "eqm/spin.hpp"
#include "oracles.hpp"

using namespace eqm;
using namespace eqm::core;
using namespace eqm::recon;

namespace {

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(EQM_FIXTURE_DIR) / name;
}

EVariableSystem load(const std::string& name) {
  return io::load_system(fixture(name));
}

}  // namespace

TEST_CASE("function-space basis from level sets") {
  auto z4 = oracle::action_from_perms({"0", "1", "2", "3"}, {{1, 2, 3, 0}});

  SUBCASE("parity gives two indicator vectors of weight 1/sqrt(2)") {
    EVariableMap parity(z4.space(), {"even", "odd"}, {0, 1, 0, 1});
    auto h = build_hilbert_space(z4.space(), parity);
    CHECK(h.dim() == 2);
    const double amp = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.basis(0, 0) - amp) < 1e-12);
    CHECK(std::abs(h.basis(2, 0) - amp) < 1e-12);
    CHECK(std::abs(h.basis(1, 1) - amp) < 1e-12);
    CHECK(std::abs(h.basis(3, 1) - amp) < 1e-12);
    CHECK(identity_residual(h.basis.adjoint() * h.basis) < 1e-12);
  }
  SUBCASE("injective variable spans the whole function space") {
    EVariableMap injective(z4.space(), {"0", "1", "2", "3"}, {0, 1, 2, 3});
    auto h = build_hilbert_space(z4.space(), injective);
    CHECK(h.dim() == 4);
    CHECK(identity_residual(h.basis) < 1e-12);  // basis is the identity matrix
  }
  SUBCASE("constant variable gives the uniform vector") {
    EVariableMap constant(z4.space(), {"c"}, {0, 0, 0, 0});
    auto h = build_hilbert_space(z4.space(), constant);
    CHECK(h.dim() == 1);
    for (int p = 0; p < 4; ++p) CHECK(std::abs(h.basis(p, 0) - 0.5) < 1e-12);
  }
  SUBCASE("dimension equals the value count on every shipped fixture") {
    for (const auto& name :
         {"z4_injective.json", "z4_parity.json", "z2xz2_two_question.json",
          "spekkens.json", "qa_violation.json", "block_reducible.json"}) {
      auto system = load(name);
      const auto& theta0 = system.variable(0);
      auto h = build_hilbert_space(system.space(), theta0);
      CHECK(h.dim() == theta0.value_count());
    }
  }
}

TEST_CASE("regular representation is a permutation representation") {
  auto z4 = oracle::action_from_perms({"0", "1", "2", "3"}, {{1, 2, 3, 0}});
  auto rep = regular_representation(z4);

  CHECK(identity_residual(rep.matrix(z4.identity())) == 0.0);

  const int shift1 = z4.element_index("1230");
  auto u = rep.matrix(shift1);
  // Columns are point indicators moved forward by the shift.
  for (int p = 0; p < 4; ++p) CHECK(u((p + 1) % 4, p) == Complex(1, 0));

  for (int k = 0; k < z4.order(); ++k) {
    CHECK(identity_residual(rep.matrix(k) * rep.matrix(z4.inverse(k))) == 0.0);
    for (int l = 0; l < z4.order(); ++l)
      CHECK((rep.matrix(k) * rep.matrix(l) - rep.matrix(z4.compose(k, l)))
                .cwiseAbs()
                .maxCoeff() == 0.0);
  }
}

TEST_CASE("state construction transports indicators") {
  SUBCASE("designated variable returns its basis vectors exactly") {
    auto system = load("z4_parity.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto rep = regular_representation(system.group());
    for (int k = 0; k < h.dim(); ++k) {
      auto sc = construct_state(system, 0, h, rep, 0, k);
      REQUIRE(sc.ok);
      CHECK((sc.state - h.basis.col(k)).norm() == 0.0);
    }
  }
  SUBCASE("injective designated variable gives exact indicators") {
    // theta0 injective: the transported indicator stays an indicator.
    auto z4 = oracle::action_from_perms({"0", "1", "2", "3"}, {{1, 2, 3, 0}});
    EVariableMap injective(z4.space(), {"0", "1", "2", "3"}, {0, 1, 2, 3});
    EVariableMap shifted(z4.space(), {"0", "1", "2", "3"}, {1, 2, 3, 0});
    const int shift1 = z4.element_index("1230");
    EVariableSystem system(z4, {"theta0", "theta1"}, {injective, shifted},
                           {{{0, 1}, shift1}});
    auto h = build_hilbert_space(system.space(), injective);
    auto rep = regular_representation(z4);
    for (int k = 0; k < 4; ++k) {
      auto sc = construct_state(system, 0, h, rep, 1, k);
      REQUIRE(sc.ok);
      CHECK(sc.projection_norm == doctest::Approx(1.0).epsilon(1e-12));
      // The state is the indicator of theta1 = k, pointwise.
      for (int p = 0; p < 4; ++p) {
        const double expected = shifted.assign[p] == k ? 1.0 : 0.0;
        CHECK(std::abs(sc.state(p) - expected) < 1e-12);
      }
    }
  }
  SUBCASE("evenly meeting level sets project to the uniform vector") {
    auto system = load("z2xz2_two_question.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto rep = regular_representation(system.group());
    for (int k = 0; k < 2; ++k) {
      auto sc = construct_state(system, 0, h, rep, 1, k);
      REQUIRE(sc.ok);
      CHECK(sc.projection_norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
      // Equal overlap with both basis vectors.
      ComplexVector coords = h.basis.adjoint() * sc.state;
      CHECK(std::abs(coords(0)) == doctest::Approx(std::abs(coords(1))).epsilon(1e-12));
    }
  }
  SUBCASE("missing connector is an error") {
    auto system = load("z4_injective.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto rep = regular_representation(system.group());
    CHECK_THROWS_AS(construct_state(system, 0, h, rep, 1, 0), std::exception);
  }
}

TEST_CASE("indicator identity holds pointwise on connected fixtures") {
  // I(theta_a(p) = u_k) equals the transported unnormalized indicator.
  for (const auto& name :
       {"z4_parity.json", "z2xz2_two_question.json", "spekkens.json",
        "qa_violation.json"}) {
    auto system = load(name);
    const auto& theta0 = system.variable(0);
    auto rep = regular_representation(system.group());
    for (int a = 1; a < system.variable_count(); ++a) {
      auto k0a = system.connector(0, a);
      REQUIRE(k0a.has_value());
      const auto& theta_a = system.variable(a);
      for (int k = 0; k < theta0.value_count(); ++k) {
        // Unnormalized theta0 indicator moved by U(k0a^{-1}).
        for (int p = 0; p < system.space().size(); ++p) {
          const int moved_from = system.group().act(*k0a, p);
          const double transported = theta0.assign[moved_from] == k ? 1.0 : 0.0;
          const int ak = static_cast<int>(
              std::find(theta_a.values.begin(), theta_a.values.end(),
                        theta0.values[k]) -
              theta_a.values.begin());
          const double direct = theta_a.assign[p] == ak ? 1.0 : 0.0;
          CHECK(transported == direct);
        }
      }
    }
  }
}

TEST_CASE("question-answer verification across fixtures") {
  SUBCASE("single-question systems pass trivially") {
    for (const auto& name : {"z4_injective.json", "block_reducible.json"}) {
      auto report = verify_question_answer_states(load(name), 0);
      CHECK(report.pass);
      CHECK(report.violations.empty());
    }
  }
  SUBCASE("relabeled parity passes with trivial coincidences recorded") {
    auto report = verify_question_answer_states(load("z4_parity.json"), 0);
    CHECK(report.pass);
    CHECK(report.trivial_coincidences.size() == 2);
    for (const auto& w : report.trivial_coincidences)
      CHECK(w.overlap == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("the violating fixture fails with witnesses") {
    auto report = verify_question_answer_states(load("qa_violation.json"), 0);
    CHECK_FALSE(report.pass);
    CHECK_FALSE(report.distinct_ok);
    REQUIRE_FALSE(report.violations.empty());
    const auto& w = report.violations.front();
    CHECK(w.overlap >= 1.0 - 1e-9);
    CHECK_FALSE(w.same_indicator);
    // Orthonormality of the lopsided variable also breaks.
    bool lopsided_fails = false;
    for (const auto& check : report.orthonormality)
      if (check.variable == "t1") lopsided_fails = !check.ok;
    CHECK(lopsided_fails);
  }
  SUBCASE("unbiased questions degenerate and are reported") {
    auto report = verify_question_answer_states(load("z2xz2_two_question.json"), 0);
    CHECK_FALSE(report.pass);
    bool bit1_fails = false;
    for (const auto& check : report.orthonormality)
      if (check.variable == "bit1") bit1_fails = !check.ok;
    CHECK(bit1_fails);
  }
}

TEST_CASE("operator assembly from orthonormal states") {
  SUBCASE("standard basis with values (1,2) is diag(1,2)") {
    std::vector<ComplexVector> basis{ComplexVector::Unit(2, 0),
                                     ComplexVector::Unit(2, 1)};
    auto a = operator_from_states({1.0, 2.0}, basis);
    CHECK(std::abs(a(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(a(1, 1) - 2.0) < 1e-12);
    CHECK(std::abs(a(0, 1)) < 1e-12);
  }
  SUBCASE("qubit x states with values +-1/2 rebuild Jx") {
    spin::SpinSystem qubit(1);
    spin::Direction x(1, 0, 0);
    std::vector<ComplexVector> states{
        spin::question_answer_state(qubit, x, -0.5),
        spin::question_answer_state(qubit, x, 0.5)};
    auto a = operator_from_states({-0.5, 0.5}, states);
    CHECK((a - spin::spin_operators(qubit).jx).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("a repeated value builds a two-dimensional eigenspace") {
    std::vector<ComplexVector> basis{ComplexVector::Unit(3, 0),
                                     ComplexVector::Unit(3, 1),
                                     ComplexVector::Unit(3, 2)};
    auto a = operator_from_states({2.0, 2.0, 5.0}, basis);
    auto es = spin::eigensystem(a);
    CHECK(es.degenerate);
    CHECK(std::abs(es.pairs[0].value - 2.0) < 1e-12);
    CHECK(std::abs(es.pairs[1].value - 2.0) < 1e-12);
  }
  SUBCASE("non-orthonormal states are rejected") {
    ComplexVector tilted(2);
    tilted << 1.0, 1.0;
    tilted /= tilted.norm();
    std::vector<ComplexVector> bad{ComplexVector::Unit(2, 0), tilted};
    CHECK_THROWS_AS(operator_from_states({1.0, 2.0}, bad), ValidationError);
  }
  SUBCASE("round trip through the eigensystem recovers values and states") {
    auto rng = oracle::rng(53);
    for (int trial = 0; trial < 5; ++trial) {
      const int dim = 3;
      auto u = oracle::random_unitary(rng, dim);
      std::vector<ComplexVector> states;
      std::vector<double> values;
      for (int i = 0; i < dim; ++i) {
        states.push_back(u.col(i));
        values.push_back(static_cast<double>(i) - 1.0);
      }
      auto a = operator_from_states(values, states);
      auto es = spin::eigensystem(a);
      for (int i = 0; i < dim; ++i) {
        CHECK(es.pairs[i].value == doctest::Approx(values[i]).epsilon(1e-9));
        CHECK(std::abs(es.pairs[i].vector.dot(states[i])) ==
              doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("spectrum versus declared values") {
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 1;
  diag(1, 1) = 2;
  CHECK(eigenvalue_value_coincidence(diag, {1.0, 2.0}).coincide);
  CHECK(eigenvalue_value_coincidence(diag, {2.0, 1.0}).coincide);  // order free
  CHECK_FALSE(eigenvalue_value_coincidence(diag, {1.0, 2.001}).coincide);
  CHECK_FALSE(eigenvalue_value_coincidence(diag, {1.0}).coincide);

  SUBCASE("perturbation beyond tolerance is detected") {
    ComplexMatrix noisy = diag;
    noisy(0, 0) += 1e-3;
    CHECK_FALSE(eigenvalue_value_coincidence(noisy, {1.0, 2.0}).coincide);
  }
}

TEST_CASE("group averages and the schur test") {
  SUBCASE("transitive injective fixture: lambda = |K| / d") {
    auto system = load("z4_injective.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto rep = regular_representation(system.group());
    auto restricted = restrict_representation(rep, h);
    REQUIRE(restricted.unitary);
    ComplexVector fiducial = ComplexVector::Zero(4);
    fiducial(0) = 1.0;
    auto avg = group_average_identity(restricted, fiducial);
    CHECK(avg.proportional);
    CHECK(avg.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(avg.residual < 1e-8);
  }
  SUBCASE("trivial group leaves a rank-one average") {
    auto trivial = oracle::action_from_perms({"0", "1", "2", "3"}, {});
    EVariableMap parity(trivial.space(), {"even", "odd"}, {0, 1, 0, 1});
    auto h = build_hilbert_space(trivial.space(), parity);
    auto restricted = restrict_representation(regular_representation(trivial), h);
    ComplexVector fiducial = ComplexVector::Zero(2);
    fiducial(0) = 1.0;
    auto avg = group_average_identity(restricted, fiducial);
    CHECK_FALSE(avg.proportional);
    CHECK(avg.residual > 0.4);
  }
  SUBCASE("block action is reported reducible") {
    auto system = load("block_reducible.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto restricted =
        restrict_representation(regular_representation(system.group()), h);
    REQUIRE(restricted.unitary);
    ComplexVector fiducial = ComplexVector::Zero(2);
    fiducial(0) = 1.0;
    auto avg = group_average_identity(restricted, fiducial);
    CHECK_FALSE(avg.proportional);
    CHECK(avg.residual > 0.9);
  }
  SUBCASE("the fiducial must be normalized") {
    auto system = load("z4_injective.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto restricted =
        restrict_representation(regular_representation(system.group()), h);
    ComplexVector long_fiducial = ComplexVector::Zero(4);
    long_fiducial(0) = 2.0;
    CHECK_THROWS_AS(group_average_identity(restricted, long_fiducial),
                    ValidationError);
  }
  SUBCASE("non-invariant subspace flags a non-unitary restriction") {
    auto system = load("z2xz2_two_question.json");
    auto h = build_hilbert_space(system.space(), system.variable(0));
    auto restricted =
        restrict_representation(regular_representation(system.group()), h);
    CHECK_FALSE(restricted.unitary);
    CHECK(restricted.unitarity_residual > 0.1);
  }
}

TEST_CASE("full report ties the pipeline together") {
  SUBCASE("orbit reduction restores transitivity on the block fixture") {
    auto system = load("block_reducible.json");
    auto report = reconstruction_report(system, "theta0", "block");
    CHECK_FALSE(report.at("transitive").get<bool>());
    CHECK_FALSE(report.at("schur").at("proportional_to_identity").get<bool>());
    for (const auto& orbit_entry : report.at("schur").at("per_orbit")) {
      CHECK(orbit_entry.at("proportional_to_identity").get<bool>());
      CHECK(orbit_entry.at("lambda").get<double>() ==
            doctest::Approx(orbit_entry.at("expected_lambda").get<double>())
                .epsilon(1e-8));
    }
  }
  SUBCASE("spekkens report carries the failed generating assumption") {
    auto system = load("spekkens.json");
    auto report = reconstruction_report(system, "x", "spekkens");
    CHECK_FALSE(report.at("generating_assumption").at("holds").get<bool>());
    CHECK(report.at("generating_assumption").at("closure_size").get<int>() == 12);
    CHECK(report.at("question_answer").at("pass").get<bool>() == false);
  }
  SUBCASE("eigenvalues match declared values on every fixture") {
    for (const auto& name :
         {"z4_injective.json", "z4_parity.json", "z2xz2_two_question.json",
          "spekkens.json", "qa_violation.json", "block_reducible.json"}) {
      auto j = io::Json::parse(io::read_file(fixture(name)));
      auto system = io::system_from_json(j);
      auto report = reconstruction_report(system, io::theta0_name(j), name);
      CHECK(report.at("observable").at("eigenvalues_match_values").get<bool>());
    }
  }
}
