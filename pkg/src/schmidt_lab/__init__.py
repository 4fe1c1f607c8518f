"""Schmidt decompositions and entanglement measures for bipartite pure states.

Layers, bottom up: ``linalg`` (guarded SVD and Hermitian eigensolver),
``schmidt`` (states and decompositions), ``measures`` (the four normalized
measures), ``order`` (partial-order sweeps and the non-order witnesses),
``qutrit`` (the two-qutrit Heisenberg model with closed-form oracles),
``stats`` (observable statistics and the separability probe), ``cli``
(deterministic JSON/CSV front end).
"""

from .errors import DegenerateDimensionError, NormalizationError
from .measures import (
    MeasureReport,
    all_measures,
    concurrence_norm,
    concurrence_raw,
    entanglement_number,
    entanglement_number_fast,
    robustness_from_reduced_density,
    robustness_norm,
    robustness_raw,
    schmidt_number,
    schmidt_number_norm,
    tangle_norm,
)
from .order import (
    ChainCheck,
    OrderReport,
    OrderWitness,
    check_order_chain,
    run_order_sweep,
    sample_haar_state,
    tangle_robustness_witnesses,
)
from .qutrit import (
    BASIS_LABELS,
    EnergyEigenbasis,
    SimulationTrace,
    Spin1Operators,
    analytic_eigenbasis,
    case_initial_state,
    closed_form_lambdas,
    evolve,
    heisenberg_hamiltonian,
    projector_expectations,
    simulate,
    spin1_matrices,
)
from .schmidt import (
    BipartiteState,
    SchmidtDecomposition,
    reconstruct_amplitudes,
    reshape_to_matrix,
    schmidt_decompose,
    schmidt_rank,
    state_from_matrix,
)
from .stats import (
    CorrelationReport,
    IndependenceResult,
    JointObservable,
    ObservableOperator,
    RealValuedObservable,
    SeparabilityVerdict,
    correlation,
    covariance,
    deviation,
    expectation,
    independence_test,
    interaction_correlation,
    joint_observable,
    joint_stochastic_operator,
    lift_a,
    lift_b,
    observable_statistics,
    outcome_probabilities,
    schmidt_form_expectation,
    schmidt_form_variance,
    separability_equivalence_check,
    spectral_observable,
    stochastic_operator,
    uncertainty_check,
    variance,
)

__all__ = [
    "BASIS_LABELS",
    "BipartiteState",
    "ChainCheck",
    "CorrelationReport",
    "DegenerateDimensionError",
    "EnergyEigenbasis",
    "IndependenceResult",
    "JointObservable",
    "MeasureReport",
    "NormalizationError",
    "ObservableOperator",
    "OrderReport",
    "OrderWitness",
    "RealValuedObservable",
    "SchmidtDecomposition",
    "SeparabilityVerdict",
    "SimulationTrace",
    "Spin1Operators",
    "all_measures",
    "analytic_eigenbasis",
    "case_initial_state",
    "check_order_chain",
    "closed_form_lambdas",
    "concurrence_norm",
    "concurrence_raw",
    "correlation",
    "covariance",
    "deviation",
    "entanglement_number",
    "entanglement_number_fast",
    "evolve",
    "expectation",
    "heisenberg_hamiltonian",
    "independence_test",
    "interaction_correlation",
    "joint_observable",
    "joint_stochastic_operator",
    "lift_a",
    "lift_b",
    "observable_statistics",
    "outcome_probabilities",
    "projector_expectations",
    "reconstruct_amplitudes",
    "reshape_to_matrix",
    "robustness_from_reduced_density",
    "robustness_norm",
    "robustness_raw",
    "run_order_sweep",
    "sample_haar_state",
    "schmidt_decompose",
    "schmidt_form_expectation",
    "schmidt_form_variance",
    "schmidt_number",
    "schmidt_number_norm",
    "schmidt_rank",
    "separability_equivalence_check",
    "simulate",
    "spectral_observable",
    "spin1_matrices",
    "state_from_matrix",
    "stochastic_operator",
    "tangle_norm",
    "tangle_robustness_witnesses",
    "uncertainty_check",
    "variance",
]

__version__ = "0.1.0"
