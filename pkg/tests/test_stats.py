"""Observable statistics: moments, uncertainty identity, bipartite layer."""

from __future__ import annotations

import numpy as np
import pytest

from schmidt_lab.errors import NormalizationError
from schmidt_lab.order import sample_haar_state
from schmidt_lab.qutrit import case_initial_state, evolve, spin1_matrices
from schmidt_lab.schmidt import BipartiteState, schmidt_decompose
from schmidt_lab.stats import (
    ObservableOperator,
    RealValuedObservable,
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

PAULI_Z = np.diag([1.0, -1.0]).astype(np.complex128)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
BELL = np.array([1, 0, 0, 1], dtype=np.complex128) / np.sqrt(2)

SPIN1 = spin1_matrices()


def _e3_amplitudes():
    amps = np.zeros(9, dtype=np.complex128)
    amps[[2, 6]] = 1 / np.sqrt(6)
    amps[4] = 2 / np.sqrt(6)
    return amps


def _e9_amplitudes():
    amps = np.zeros(9, dtype=np.complex128)
    amps[[2, 6]] = 1 / np.sqrt(3)
    amps[4] = -1 / np.sqrt(3)
    return amps


def _random_hermitian(dim, rng):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / (2 * np.sqrt(dim))


def _random_state(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _product_state(dim_a, dim_b, rng):
    return np.kron(_random_state(dim_a, rng), _random_state(dim_b, rng))


# ---------------------------------------------------------------------------
# single-space statistics


def test_expectation_examples():
    up = np.array([1.0, 0.0])
    assert expectation(PAULI_Z, up) == pytest.approx(1.0)
    assert expectation(np.eye(3), np.array([0, 1, 0.0])) == pytest.approx(1.0)
    zz = np.kron(SPIN1.sz, SPIN1.sz)
    assert expectation(zz, _e3_amplitudes()) == pytest.approx(-1 / 3, abs=1e-12)
    with pytest.raises(NormalizationError):
        expectation(PAULI_Z, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        ObservableOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError, match="dimension"):
        expectation(PAULI_Z, np.array([0, 1, 0.0]))


def test_deviation_is_centered():
    rng = np.random.default_rng(3)
    a = _random_hermitian(4, rng)
    phi = _random_state(4, rng)
    dev = deviation(a, phi)
    assert expectation(dev, phi) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(deviation(np.eye(4), phi).matrix, 0, atol=1e-15)


def test_correlation_pinned_values_and_symmetry():
    z_a = lift_a(PAULI_Z, 2)
    z_b = lift_b(PAULI_Z, 2)
    assert correlation(z_a, z_b, BELL) == pytest.approx(1.0, abs=1e-12)
    assert correlation(z_a, lift_b(PAULI_X, 2), BELL) == pytest.approx(0.0, abs=1e-12)

    rng = np.random.default_rng(4)
    a = _random_hermitian(5, rng)
    b = _random_hermitian(5, rng)
    phi = _random_state(5, rng)
    assert correlation(a, b, phi) == pytest.approx(np.conj(correlation(b, a, phi)))
    assert covariance(a, b, phi) == pytest.approx(correlation(a, b, phi).real)

    product = _product_state(3, 3, rng)
    cor = correlation(lift_a(SPIN1.sz, 3), lift_b(SPIN1.sx, 3), product)
    assert abs(cor) <= 1e-12

    with pytest.raises(ValueError, match="shapes differ"):
        correlation(PAULI_Z, np.eye(3), np.array([1.0, 0.0]))


def test_variance_examples():
    assert variance(PAULI_Z, np.array([0.0, 1.0])) == pytest.approx(0.0, abs=1e-15)
    assert variance(SPIN1.sz, np.array([0, 1, 0.0])) == pytest.approx(0.0, abs=1e-15)
    zz = np.kron(SPIN1.sz, SPIN1.sz)
    assert variance(zz, _e3_amplitudes()) == pytest.approx(2 / 9, abs=1e-12)


def test_uncertainty_identity_random_sweep():
    """(1/4)|<[A,B]>|^2 + cov^2 = |cor|^2 from independent paths, dims 2-6."""
    rng = np.random.default_rng(5)
    for dim in range(2, 7):
        for _ in range(40):
            a = _random_hermitian(dim, rng)
            b = _random_hermitian(dim, rng)
            phi = _random_state(dim, rng)
            report = uncertainty_check(a, b, phi)
            assert report.identity_residual <= 1e-12
            assert report.inequality_slack >= -1e-12
            assert report.covariance == pytest.approx(report.correlation.real, abs=1e-12)
            assert report.commutator_expect.imag == pytest.approx(
                2 * report.correlation.imag, abs=1e-12
            )


def test_uncertainty_check_on_lifted_pairs():
    rng = np.random.default_rng(6)
    a = _random_hermitian(3, rng)
    b = _random_hermitian(3, rng)

    entangled = evolve(case_initial_state(2), 0.9)
    report = uncertainty_check(lift_a(a, 3), lift_b(b, 3), entangled)
    assert report.commutator_expect == pytest.approx(0.0, abs=1e-14)
    assert report.identity_residual <= 1e-12

    product = _product_state(3, 3, rng)
    report = uncertainty_check(lift_a(a, 3), lift_b(b, 3), product)
    assert abs(report.correlation) <= 1e-12
    assert report.covariance == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# real-valued observables


def test_real_valued_observable_validation():
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    p1 = np.diag([0.0, 1.0]).astype(np.complex128)
    with pytest.raises(ValueError, match="at least one"):
        RealValuedObservable(outcomes=(), effects=())
    with pytest.raises(ValueError, match="distinct"):
        RealValuedObservable(outcomes=(1.0, 1.0), effects=(p0, p1))
    with pytest.raises(ValueError, match="outcomes but"):
        RealValuedObservable(outcomes=(1.0, -1.0), effects=(p0,))
    with pytest.raises(ValueError, match="not in"):
        RealValuedObservable(outcomes=(1.0, -1.0), effects=(2 * p0, np.eye(2) - 2 * p0))
    with pytest.raises(ValueError, match="sum to identity"):
        RealValuedObservable(outcomes=(1.0, -1.0), effects=(p0, p0))
    with pytest.raises(ValueError, match="one dimension"):
        RealValuedObservable(outcomes=(1.0, -1.0), effects=(p0, np.eye(3) / 3))


def test_stochastic_operator_recovers_spin_matrices():
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    qubit = RealValuedObservable(outcomes=(1.0, -1.0), effects=(p0, np.eye(2) - p0))
    np.testing.assert_allclose(stochastic_operator(qubit).matrix, PAULI_Z, atol=1e-15)

    projectors = tuple(np.diag(row).astype(np.complex128) for row in np.eye(3))
    spin = RealValuedObservable(outcomes=(1.0, 0.0, -1.0), effects=projectors)
    np.testing.assert_allclose(stochastic_operator(spin).matrix, SPIN1.sz, atol=1e-15)

    probs = outcome_probabilities(spin, np.array([0.6, 0.8, 0.0]))
    np.testing.assert_allclose(probs, [0.36, 0.64, 0.0], atol=1e-12)
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_spectral_observable_round_trip_and_grouping():
    rng = np.random.default_rng(7)
    for dim in (2, 3, 5):
        m = _random_hermitian(dim, rng)
        obs = spectral_observable(m)
        np.testing.assert_allclose(stochastic_operator(obs).matrix, m, atol=1e-10)
        totals = np.sum(obs.effects, axis=0)
        np.testing.assert_allclose(totals, np.eye(dim), atol=1e-10)

    # degenerate spectrum groups into one effect per distinct eigenvalue
    zz = np.kron(SPIN1.sz, SPIN1.sz)
    obs = spectral_observable(zz)
    assert obs.outcomes == (-1.0, 0.0, 1.0)
    ranks = [float(np.trace(effect).real) for effect in obs.effects]
    assert ranks == pytest.approx([2.0, 5.0, 2.0], abs=1e-10)

    probs = outcome_probabilities(obs, _e3_amplitudes())
    np.testing.assert_allclose(probs, [1 / 3, 2 / 3, 0.0], atol=1e-12)


def test_observable_statistics_matches_stochastic_path():
    z_a = spectral_observable(lift_a(PAULI_Z, 2))
    z_b = spectral_observable(lift_b(PAULI_Z, 2))
    report = observable_statistics(z_a, z_b, BELL)
    assert report.correlation == pytest.approx(1.0, abs=1e-12)
    assert report.variance_a == pytest.approx(1.0, abs=1e-12)
    assert report.identity_residual <= 1e-12

    direct = uncertainty_check(
        stochastic_operator(z_a), stochastic_operator(z_b), BELL
    )
    assert report.correlation == pytest.approx(direct.correlation, abs=1e-12)
    assert report.variance_b == pytest.approx(direct.variance_b, abs=1e-12)

    product = np.kron([1.0, 0.0], [0.6, 0.8]).astype(np.complex128)
    report = observable_statistics(z_a, z_b, product)
    assert abs(report.correlation) <= 1e-12

    with pytest.raises(ValueError, match="dimensions differ"):
        observable_statistics(z_a, spectral_observable(PAULI_Z), BELL)


# ---------------------------------------------------------------------------
# bipartite layer


def test_independence_test_certifies_entanglement():
    spin_obs = spectral_observable(SPIN1.sz)
    rng = np.random.default_rng(9)

    product = BipartiteState(3, 3, _product_state(3, 3, rng))
    result = independence_test(spin_obs, spin_obs, product)
    assert result.ok
    assert result.max_deviation <= 1e-12

    e3 = BipartiteState(3, 3, _e3_amplitudes())
    result = independence_test(spin_obs, spin_obs, e3)
    assert not result.ok
    assert result.max_deviation == pytest.approx(2 / 9, abs=1e-12)
    assert result.worst_outcomes == (0.0, 0.0)

    e9 = BipartiteState(3, 3, _e9_amplitudes())
    result = independence_test(spin_obs, spin_obs, e9)
    assert result.max_deviation >= 2 / 9 - 1e-12

    with pytest.raises(ValueError, match="do not match"):
        independence_test(spectral_observable(PAULI_Z), spin_obs, e3)


def test_joint_observable_structure():
    obs_a = spectral_observable(PAULI_Z)
    obs_b = spectral_observable(PAULI_X)
    joint = joint_observable(obs_a, obs_b)
    assert len(joint.outcomes) == 4
    np.testing.assert_allclose(np.sum(joint.effects, axis=0), np.eye(4), atol=1e-12)

    # marginal over the second outcome recovers the lifted first effect
    for x, effect_a in zip(obs_a.outcomes, obs_a.effects):
        marginal = sum(
            effect
            for (ox, _), effect in zip(joint.outcomes, joint.effects)
            if ox == x
        )
        np.testing.assert_allclose(marginal, np.kron(effect_a, np.eye(2)), atol=1e-12)

    stoch = joint_stochastic_operator(joint).matrix
    np.testing.assert_allclose(
        stoch,
        np.kron(stochastic_operator(obs_a).matrix, stochastic_operator(obs_b).matrix),
        atol=1e-12,
    )

    rng = np.random.default_rng(10)
    phi = _random_state(4, rng)
    summed = sum(
        x * y * expectation(effect, phi)
        for (x, y), effect in zip(joint.outcomes, joint.effects)
    )
    assert summed == pytest.approx(expectation(stoch, phi), abs=1e-12)


def test_schmidt_form_expectation():
    rng = np.random.default_rng(11)
    a = _random_hermitian(3, rng)
    b = _random_hermitian(3, rng)

    phi = _random_state(3, rng)
    psi = _random_state(3, rng)
    product = BipartiteState(3, 3, np.kron(phi, psi))
    decomp = schmidt_decompose(product)
    assert schmidt_form_expectation(a, b, decomp) == pytest.approx(
        expectation(a, phi) * expectation(b, psi), abs=1e-12
    )

    e9 = BipartiteState(3, 3, _e9_amplitudes())
    decomp = schmidt_decompose(e9)
    assert schmidt_form_expectation(SPIN1.sz, SPIN1.sz, decomp) == pytest.approx(
        -2 / 3, abs=1e-12
    )

    for _ in range(25):
        state = sample_haar_state(3, 4, rng)
        decomp = schmidt_decompose(state)
        a = _random_hermitian(3, rng)
        b = _random_hermitian(4, rng)
        direct = expectation(np.kron(a, b), state.amplitudes)
        assert schmidt_form_expectation(a, b, decomp) == pytest.approx(direct, abs=1e-10)
        marginal = expectation(lift_a(a, 4), state.amplitudes)
        assert schmidt_form_expectation(a, np.eye(4), decomp) == pytest.approx(
            marginal, abs=1e-10
        )


def test_schmidt_form_variance():
    rng = np.random.default_rng(12)
    a = _random_hermitian(3, rng)
    b = _random_hermitian(3, rng)

    phi = _random_state(3, rng)
    psi = _random_state(3, rng)
    decomp = schmidt_decompose(BipartiteState(3, 3, np.kron(phi, psi)))
    expected = (
        expectation(a @ a, phi) * expectation(b @ b, psi)
        - (expectation(a, phi) * expectation(b, psi)) ** 2
    )
    assert schmidt_form_variance(a, b, decomp) == pytest.approx(expected, abs=1e-12)

    # product of eigenstates is an eigenstate of the product operator
    uu = np.zeros(9, dtype=np.complex128)
    uu[0] = 1.0
    decomp = schmidt_decompose(BipartiteState(3, 3, uu))
    assert schmidt_form_variance(SPIN1.sz, SPIN1.sz, decomp) == pytest.approx(
        0.0, abs=1e-12
    )

    for _ in range(25):
        state = sample_haar_state(3, 3, rng)
        decomp = schmidt_decompose(state)
        a = _random_hermitian(3, rng)
        b = _random_hermitian(3, rng)
        direct = variance(np.kron(a, b), state.amplitudes)
        assert schmidt_form_variance(a, b, decomp) == pytest.approx(direct, abs=1e-10)


def test_interaction_correlation():
    eye3 = np.eye(3, dtype=np.complex128)
    e3 = BipartiteState(3, 3, _e3_amplitudes())
    value = interaction_correlation(SPIN1.sz, eye3, eye3, SPIN1.sz, e3)
    assert value == pytest.approx(-1 / 3, abs=1e-12)

    rng = np.random.default_rng(13)
    phi = _random_state(3, rng)
    psi = _random_state(3, rng)
    product = BipartiteState(3, 3, np.kron(phi, psi))
    a, b, c, d = (_random_hermitian(3, rng) for _ in range(4))
    # <AC> and <BD> are complex brackets since the products are not Hermitian
    expected = complex(np.vdot(phi, a @ c @ phi)) * complex(np.vdot(psi, b @ d @ psi)) - (
        expectation(a, phi)
        * expectation(b, psi)
        * expectation(c, phi)
        * expectation(d, psi)
    )
    assert interaction_correlation(a, b, c, d, product) == pytest.approx(
        expected, abs=1e-12
    )

    # A = C, B = D = I collapses to the variance of the lifted operator
    state = sample_haar_state(3, 3, rng)
    value = interaction_correlation(a, eye3, a, eye3, state)
    assert value.imag == pytest.approx(0.0, abs=1e-12)
    assert value.real == pytest.approx(
        variance(lift_a(a, 3), state.amplitudes), abs=1e-10
    )

    for _ in range(25):
        state = sample_haar_state(3, 3, rng)
        a, b, c, d = (_random_hermitian(3, rng) for _ in range(4))
        direct = correlation(np.kron(a, b), np.kron(c, d), state.amplitudes)
        assert interaction_correlation(a, b, c, d, state) == pytest.approx(
            direct, abs=1e-10
        )


def test_separability_equivalence_check():
    uu = np.zeros(9, dtype=np.complex128)
    uu[0] = 1.0
    verdict = separability_equivalence_check(BipartiteState(3, 3, uu))
    assert verdict.verdict == "separable-consistent"
    assert verdict.schmidt_rank == 1
    assert verdict.max_abs_correlation <= 1e-10
    assert verdict.max_independence_deviation <= 1e-10

    verdict = separability_equivalence_check(BipartiteState(3, 3, _e3_amplitudes()))
    assert verdict.verdict == "entangled"
    assert verdict.schmidt_rank == 3
    assert verdict.max_abs_correlation >= 1 / 3 - 1e-12

    evolved = evolve(case_initial_state(1), np.pi / 4)
    verdict = separability_equivalence_check(BipartiteState(3, 3, evolved))
    assert verdict.verdict == "entangled"
    assert verdict.schmidt_rank == 2


def test_separability_verdicts_match_rank_on_corpus():
    """Sampled observables agree with the rank criterion both ways."""
    rng = np.random.default_rng(14)
    for _ in range(30):
        state = BipartiteState(3, 3, _product_state(3, 3, rng))
        verdict = separability_equivalence_check(state, trials=8)
        assert verdict.verdict == "separable-consistent"
        assert verdict.schmidt_rank == 1
    for _ in range(30):
        state = sample_haar_state(3, 3, rng)
        lam = schmidt_decompose(state).lambdas
        assert lam[1] > 1e-8  # Haar samples are never borderline
        verdict = separability_equivalence_check(state, trials=8)
        assert verdict.verdict == "entangled"
        assert verdict.schmidt_rank > 1
