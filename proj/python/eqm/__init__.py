"""Question-answer spin states, noisy measurements, inference over answers,
and finite symmetry-system verification."""

from eqm._core import (
    EVariableSystem,
    LikelihoodEffect,
    ProjectiveResolution,
    SpinSystem,
    StatisticalModel,
    ValidationError,
    bloch_from_qubit,
    born_probability,
    check_generating_assumption,
    check_permissible,
    component_operator,
    credibility_set,
    density_from_distribution,
    effects_equal,
    eigensystem,
    is_transitive,
    likelihood_effect,
    load_system,
    lueders_update,
    mle,
    observable_operator,
    orbits,
    outcome_distribution,
    posterior_repeated,
    posterior_single_shot,
    povm_element,
    question_answer_state,
    reconstruction_report,
    resolution_from_direction,
    resolution_from_operator,
    resolution_from_states,
    run_scenario,
    sample_data,
    spin_operators,
    system_from_json,
)

__all__ = [
    "EVariableSystem",
    "LikelihoodEffect",
    "ProjectiveResolution",
    "SpinSystem",
    "StatisticalModel",
    "ValidationError",
    "bloch_from_qubit",
    "born_probability",
    "check_generating_assumption",
    "check_permissible",
    "component_operator",
    "credibility_set",
    "density_from_distribution",
    "effects_equal",
    "eigensystem",
    "is_transitive",
    "likelihood_effect",
    "load_system",
    "lueders_update",
    "mle",
    "observable_operator",
    "orbits",
    "outcome_distribution",
    "posterior_repeated",
    "posterior_single_shot",
    "povm_element",
    "question_answer_state",
    "reconstruction_report",
    "resolution_from_direction",
    "resolution_from_operator",
    "resolution_from_states",
    "run_scenario",
    "sample_data",
    "spin_operators",
    "system_from_json",
]
