"""Smoke tests for the python module: each main operation runs end to end."""

import math
import os

import numpy as np
import pytest

import eqm

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "fixtures")


def test_spin_operators_commutator():
    jx, jy, jz = eqm.spin_operators(0.5)
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    assert np.allclose(np.diag(jz), [0.5, -0.5])


def test_question_answer_state_is_an_eigenvector():
    op = eqm.component_operator(1.0, [0.6, 0.8, 0.0])
    state = eqm.question_answer_state(1.0, [0.6, 0.8, 0.0], 1.0)
    assert np.linalg.norm(op @ state - 1.0 * state) < 1e-9


def test_bloch_round_trip():
    ket = np.array([1.0, 1.0j]) / math.sqrt(2.0)
    direction, k = eqm.bloch_from_qubit(ket)
    assert k == 0.5
    assert abs(direction[1] - 1.0) < 1e-12
    rebuilt = eqm.question_answer_state(0.5, list(direction), k)
    assert abs(np.vdot(rebuilt, ket)) > 1.0 - 1e-9


def test_noisy_measurement_pipeline():
    res = eqm.resolution_from_direction(0.5, [0, 0, 1])
    model = eqm.StatisticalModel.symmetric_noise(res.labels, 0.1)
    rho = eqm.density_from_distribution(res, [0.0, 1.0])  # labels ascend: -0.5, 0.5
    effect = eqm.likelihood_effect(model, res)

    probs = eqm.outcome_distribution(rho, effect)
    assert abs(probs["0.5"] - 0.9) < 1e-12
    assert abs(sum(probs.values()) - 1.0) < 1e-12

    draws = eqm.sample_data(rho, model, res, n=1000, seed=3)
    assert draws == eqm.sample_data(rho, model, res, n=1000, seed=3)
    assert eqm.mle(model, draws) == "0.5"

    posterior = eqm.posterior_repeated(model, ["0.5"] * 10)
    expected = 0.9**10 / (0.9**10 + 0.1**10)
    assert abs(posterior["0.5"] - expected) < 1e-12

    labels, achieved = eqm.credibility_set(posterior, 0.95)
    assert labels == ["0.5"]
    assert achieved >= 0.95


def test_lueders_update_conditions_the_state():
    res = eqm.resolution_from_direction(0.5, [0, 0, 1])
    mixed = eqm.density_from_distribution(res, [0.5, 0.5])
    updated = eqm.lueders_update(mixed, res.projector("0.5"))
    assert np.allclose(updated, res.projector("0.5"), atol=1e-12)


def test_povm_completeness():
    res = eqm.resolution_from_direction(0.5, [1, 0, 0])
    model = eqm.StatisticalModel.symmetric_noise(res.labels, 0.2)
    effect = eqm.likelihood_effect(model, res)
    total = eqm.povm_element(effect, res.labels)
    assert np.allclose(total, np.eye(2), atol=1e-12)


def test_system_fixture_checks():
    system = eqm.load_system(os.path.join(FIXTURES, "spekkens.json"))
    assert system.group_order == 24
    generates, closure = eqm.check_generating_assumption(system)
    assert not generates
    assert closure == 12

    parity = eqm.load_system(os.path.join(FIXTURES, "z4_parity.json"))
    assert eqm.check_permissible(parity, "parity")
    assert eqm.is_transitive(parity)
    assert eqm.orbits(parity) == [["0", "1", "2", "3"]]


def test_reconstruction_report_dict():
    report = eqm.reconstruction_report(os.path.join(FIXTURES, "z4_injective.json"))
    assert report["question_answer"]["pass"]
    assert report["schur"]["proportional_to_identity"]
    assert abs(report["schur"]["lambda"] - 1.0) < 1e-8


def test_scenarios():
    cat = eqm.run_scenario("cat")
    assert [s["agreement"] for s in cat["stages"]] == [False, True]
    two_slit = eqm.run_scenario("two-slit")
    assert abs(two_slit["stages"][0]["off_diagonal"]["all"] - 0.5) < 1e-12
    with pytest.raises(ValueError):
        eqm.run_scenario("nope")


def test_validation_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        eqm.question_answer_state(0.5, [0, 0, 1], 0.3)
    with pytest.raises(ValueError):
        eqm.born_probability(np.eye(2), np.eye(2))  # trace 2 is not a state
