"""Entanglement measures for bipartite pure states.

All four measures are functions of the Schmidt coefficients alone. With
p = sum(lambda^4) and n = min(dim_a, dim_b):

==================  =======================  =========================
measure             raw                      normalized to [0, 1]
==================  =======================  =========================
entanglement no.    e = sqrt(1 - p)          (range [0, sqrt((n-1)/n)])
concurrence         sqrt(2) * e              sqrt(n/(n-1)) * e
tangle              2 * (1 - p)              n/(n-1) * (1 - p)
robustness          (sum lambda)^2 - 1       ((sum lambda)^2 - 1)/(n-1)
Schmidt number      K = 1/p                  (K - 1)/(n - 1)
==================  =======================  =========================

Every normalized form divides by n - 1, so n = 1 raises rather than
inventing a value. Results land in [0, 1] up to floating error; anything
within 1e-12 of a boundary is clamped onto it, anything further out is an
error, not a rounding artifact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDimensionError, NormalizationError
from .linalg import gram_trace_sq, hermitian_eig
from .schmidt import BipartiteState, reshape_to_matrix, schmidt_decompose, schmidt_rank

LAMBDA_NORM_TOL = 1e-10
CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class MeasureReport:
    """All measures of one state, computed from a single decomposition."""

    n: int
    lambdas: tuple[float, ...]
    entanglement_number: float
    concurrence_norm: float
    tangle_norm: float
    robustness_norm: float
    schmidt_number_raw: float
    schmidt_number_norm: float
    schmidt_rank: int


def _clamp(value: float, lo: float, hi: float, what: str) -> float:
    """Snap ``value`` into [lo, hi] when within CLAMP_TOL of a boundary."""
    if value < lo:
        if lo - value > CLAMP_TOL:
            raise ValueError(f"{what} = {value!r} is below {lo} by more than {CLAMP_TOL:.0e}")
        return lo
    if value > hi:
        if value - hi > CLAMP_TOL:
            raise ValueError(f"{what} = {value!r} is above {hi} by more than {CLAMP_TOL:.0e}")
        return hi
    return value


def _validated(lambdas: np.ndarray) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float).reshape(-1)
    if lam.size == 0:
        raise ValueError("need at least one Schmidt coefficient")
    if not np.all(np.isfinite(lam)) or np.any(lam < 0):
        raise ValueError("Schmidt coefficients must be finite and non-negative")
    deficit = abs(float(np.sum(lam**2)) - 1.0)
    if deficit > LAMBDA_NORM_TOL:
        raise NormalizationError(deficit, what="schmidt coefficients")
    return lam


def _effective_n(lam: np.ndarray, n: int | None) -> int:
    size = int(lam.shape[0])
    if n is None:
        n = size
    if n < size:
        raise ValueError(f"n = {n} is smaller than the number of coefficients {size}")
    if n < 2:
        raise DegenerateDimensionError()
    return n


def entanglement_number(lambdas: np.ndarray) -> float:
    """sqrt(1 - sum lambda^4). Zero iff the state is a product state."""
    lam = _validated(lambdas)
    return float(np.sqrt(_clamp(1.0 - float(np.sum(lam**4)), 0.0, 1.0, "1 - sum lambda^4")))


def entanglement_number_fast(state: BipartiteState) -> float:
    """Entanglement number straight from the coefficient matrix.

    Uses 1 - Tr[(C C^dag)^2], skipping the SVD entirely; agrees with the
    Schmidt-coefficient path to 1e-12.
    """
    radicand = 1.0 - gram_trace_sq(reshape_to_matrix(state))
    return float(np.sqrt(_clamp(radicand, 0.0, 1.0, "1 - Tr[(CC+)^2]")))


def concurrence_raw(lambdas: np.ndarray) -> float:
    """sqrt(2) * entanglement number (the I-concurrence scale)."""
    return float(np.sqrt(2.0) * entanglement_number(lambdas))


def concurrence_norm(lambdas: np.ndarray, n: int | None = None) -> float:
    """sqrt(n/(n-1) * (1 - sum lambda^4)), in [0, 1]."""
    lam = _validated(lambdas)
    n = _effective_n(lam, n)
    value = np.sqrt(n / (n - 1)) * np.sqrt(max(1.0 - float(np.sum(lam**4)), 0.0))
    return _clamp(float(value), 0.0, 1.0, "normalized concurrence")


def tangle_norm(lambdas: np.ndarray, n: int | None = None) -> float:
    """n/(n-1) * (1 - sum lambda^4) = concurrence_norm**2, in [0, 1]."""
    lam = _validated(lambdas)
    n = _effective_n(lam, n)
    value = n / (n - 1) * (1.0 - float(np.sum(lam**4)))
    return _clamp(float(value), 0.0, 1.0, "normalized tangle")


def robustness_raw(lambdas: np.ndarray) -> float:
    """(sum lambda)^2 - 1, the unnormalized robustness."""
    lam = _validated(lambdas)
    return _clamp(float(np.sum(lam)) ** 2 - 1.0, 0.0, float(lam.shape[0]) - 1.0, "raw robustness")


def robustness_norm(lambdas: np.ndarray, n: int | None = None) -> float:
    """((sum lambda)^2 - 1) / (n - 1), in [0, 1]."""
    lam = _validated(lambdas)
    n = _effective_n(lam, n)
    value = (float(np.sum(lam)) ** 2 - 1.0) / (n - 1)
    return _clamp(float(value), 0.0, 1.0, "normalized robustness")


def robustness_from_reduced_density(state: BipartiteState, subsystem: str = "a") -> float:
    """Normalized robustness via ((Tr sqrt(rho))^2 - 1) / (n - 1).

    Diagonalizes the reduced density matrix of one side (``rho_A = C C^dag``
    or ``rho_B = C^dag C``) instead of decomposing the state; it exists to
    cross-check :func:`robustness_norm`. The reduced density has rank at
    most n, so only the top n eigenvalues enter the trace: the structural
    null space of the larger factor comes back as 1e-16 crumbs whose
    square roots would be 1e-8. The same amplification is unavoidable for
    genuinely rank-deficient states, where agreement with the Schmidt
    route degrades from ~1e-15 to ~1e-8.
    """
    if state.n < 2:
        raise DegenerateDimensionError()
    c = reshape_to_matrix(state)
    if subsystem == "a":
        rho = c @ c.conj().T
    elif subsystem == "b":
        rho = c.conj().T @ c
    else:
        raise ValueError(f"subsystem must be 'a' or 'b', got {subsystem!r}")
    eigenvalues, _ = hermitian_eig(rho)
    top = eigenvalues[-state.n:]
    # eigenvalue crumbs at -1e-16 from finite arithmetic are legitimate zeros
    trace_root = float(np.sum(np.sqrt(np.clip(top, 0.0, None))))
    value = (trace_root**2 - 1.0) / (state.n - 1)
    return _clamp(float(value), 0.0, 1.0, "normalized robustness (density path)")


def schmidt_number(lambdas: np.ndarray) -> float:
    """K = 1 / sum lambda^4, the mean count of active Schmidt modes."""
    lam = _validated(lambdas)
    value = 1.0 / float(np.sum(lam**4))
    return _clamp(value, 1.0, float(lam.shape[0]), "schmidt number")


def schmidt_number_norm(lambdas: np.ndarray, n: int | None = None) -> float:
    """(K - 1) / (n - 1), in [0, 1]."""
    lam = _validated(lambdas)
    n = _effective_n(lam, n)
    value = (1.0 / float(np.sum(lam**4)) - 1.0) / (n - 1)
    return _clamp(float(value), 0.0, 1.0, "normalized schmidt number")


def all_measures(state: BipartiteState) -> MeasureReport:
    """Every measure of one state from a single Schmidt decomposition."""
    if state.n < 2:
        raise DegenerateDimensionError()
    lam = schmidt_decompose(state).lambdas
    n = state.n
    return MeasureReport(
        n=n,
        lambdas=tuple(float(x) for x in lam),
        entanglement_number=entanglement_number(lam),
        concurrence_norm=concurrence_norm(lam, n),
        tangle_norm=tangle_norm(lam, n),
        robustness_norm=robustness_norm(lam, n),
        schmidt_number_raw=schmidt_number(lam),
        schmidt_number_norm=schmidt_number_norm(lam, n),
        schmidt_rank=schmidt_rank(lam),
    )
