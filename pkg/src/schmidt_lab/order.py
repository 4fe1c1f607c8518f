"""Partial-order sweeps over the normalized measures.

Two chains hold for every bipartite pure state:

    schmidt_number_norm <= tangle_norm      <= concurrence_norm
    schmidt_number_norm <= robustness_norm  <= concurrence_norm

Tangle and robustness themselves admit no order: Case-1 Schmidt
coefficients (|cos wt|, |sin wt|, 0) give robustness > tangle at
wt = pi/16 and tangle > robustness at wt = pi/4. This module samples
Haar-random states (Gaussian amplitudes, normalized), checks the chains
with an additive slack, and packages the two counterexample witnesses.

The public sweep is deterministic per seed (numpy PCG64 via
``default_rng``) and internally vectorizes the SVDs so hundreds of
thousands of samples finish in seconds; ``check_order_chain`` is the
scalar contract the vectorized path is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .measures import MeasureReport, robustness_norm, tangle_norm
from .schmidt import BipartiteState

DEFAULT_SLACK = 1e-12


@dataclass(frozen=True)
class ChainCheck:
    """Outcome of the four chain inequalities on one report.

    ``max_excess`` is the largest lhs - rhs over the four inequalities;
    negative when every inequality holds strictly.
    """

    ok: bool
    failures: tuple[str, ...]
    max_excess: float


@dataclass(frozen=True)
class OrderWitness:
    """One Case-1 point where tangle and robustness disagree on order."""

    omega_t: float
    lambdas: tuple[float, ...]
    tangle_norm: float
    robustness_norm: float


@dataclass(frozen=True)
class OrderReport:
    """Aggregate of a chain sweep plus the non-order witnesses."""

    samples: int
    violations_k_t_c: int
    violations_k_r_c: int
    max_slack_used: float
    witness_t_gt_r: OrderWitness
    witness_r_gt_t: OrderWitness


def sample_haar_state(dim_a: int, dim_b: int, seed: int | np.random.Generator) -> BipartiteState:
    """Haar-random pure state of a ``dim_a x dim_b`` system.

    Amplitudes are independent standard complex Gaussians, normalized.
    An integer seed gives a reproducible state; passing a Generator draws
    from (and advances) it.
    """
    if dim_a < 1 or dim_b < 1:
        raise ValueError(f"dimensions must be >= 1, got {dim_a} x {dim_b}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    d = dim_a * dim_b
    amps = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return BipartiteState.renormalized(dim_a, dim_b, amps)


def check_order_chain(report: MeasureReport, slack: float = DEFAULT_SLACK) -> ChainCheck:
    """Check both chains on one report with additive ``slack``.

    Failure strings name the violated inequality with its values so a
    sweep log pinpoints the offending sample.
    """
    k = report.schmidt_number_norm
    t = report.tangle_norm
    c = report.concurrence_norm
    r = report.robustness_norm
    inequalities = (
        ("schmidt_number_norm <= tangle_norm", k, t),
        ("tangle_norm <= concurrence_norm", t, c),
        ("schmidt_number_norm <= robustness_norm", k, r),
        ("robustness_norm <= concurrence_norm", r, c),
    )
    failures = []
    max_excess = -np.inf
    for name, lhs, rhs in inequalities:
        excess = lhs - rhs
        max_excess = max(max_excess, excess)
        if excess > slack:
            failures.append(f"{name} violated: {lhs!r} > {rhs!r} + {slack:.0e}")
    return ChainCheck(ok=not failures, failures=tuple(failures), max_excess=max_excess)


def _case1_witness(omega_t: float) -> OrderWitness:
    lam = np.array([abs(np.cos(omega_t)), abs(np.sin(omega_t)), 0.0])
    lam = np.sort(lam)[::-1]
    return OrderWitness(
        omega_t=float(omega_t),
        lambdas=tuple(float(x) for x in lam),
        tangle_norm=tangle_norm(lam, 3),
        robustness_norm=robustness_norm(lam, 3),
    )


def tangle_robustness_witnesses() -> tuple[OrderWitness, OrderWitness]:
    """The two Case-1 points proving tangle and robustness are unordered.

    Returns ``(witness_r_gt_t, witness_t_gt_r)``: at wt = pi/16 robustness
    exceeds tangle, at wt = pi/4 tangle exceeds robustness.
    """
    r_gt_t = _case1_witness(np.pi / 16)
    t_gt_r = _case1_witness(np.pi / 4)
    if not r_gt_t.robustness_norm > r_gt_t.tangle_norm:
        raise AssertionError("expected robustness > tangle at wt = pi/16")
    if not t_gt_r.tangle_norm > t_gt_r.robustness_norm:
        raise AssertionError("expected tangle > robustness at wt = pi/4")
    return r_gt_t, t_gt_r


def _boundary_lambdas(n: int) -> list[np.ndarray]:
    """Deterministic edge cases injected alongside the Haar draw."""
    cases = [
        np.eye(n)[0],                    # separable
        np.full(n, 1.0 / np.sqrt(n)),    # maximally entangled
    ]
    if n >= 3:
        rank2 = np.zeros(n)
        rank2[:2] = 1.0 / np.sqrt(2.0)   # rank-deficient
        cases.append(rank2)
    return cases


def _haar_lambda_batch(dim_a: int, dim_b: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Schmidt coefficients of ``count`` Haar states, one batched SVD."""
    raw = rng.standard_normal((count, dim_a, dim_b)) + 1j * rng.standard_normal((count, dim_a, dim_b))
    norms = np.linalg.norm(raw.reshape(count, -1), axis=1)
    matrices = raw / norms[:, None, None]
    return np.linalg.svd(matrices, compute_uv=False)


def _chain_excesses(lambdas: np.ndarray, n: int) -> np.ndarray:
    """Per-sample (excess of K<=T<=C chain, excess of K<=R<=C chain).

    ``lambdas``: (count, n) descending rows with unit sum of squares.
    Vectorized twin of check_order_chain; the scalar path is the oracle.
    """
    p = np.sum(lambdas**4, axis=1)
    k = (1.0 / p - 1.0) / (n - 1)
    t = n / (n - 1) * (1.0 - p)
    c = np.sqrt(np.clip(t, 0.0, None))
    r = (np.sum(lambdas, axis=1) ** 2 - 1.0) / (n - 1)
    excess_ktc = np.maximum(k - t, t - c)
    excess_krc = np.maximum(k - r, r - c)
    return np.stack([excess_ktc, excess_krc], axis=1)


def run_order_sweep(
    dims: Sequence[tuple[int, int]],
    samples_per_dim: int,
    seed: int,
    slack: float = DEFAULT_SLACK,
) -> OrderReport:
    """Sweep both chains over Haar states for each ``(dim_a, dim_b)``.

    Every dimension pair also gets the deterministic boundary states
    (separable, maximally entangled, and rank-deficient where n >= 3).
    The returned report carries the tangle-robustness witness points and
    the largest chain excess observed anywhere in the sweep.
    """
    if samples_per_dim < 1:
        raise ValueError(f"samples_per_dim must be >= 1, got {samples_per_dim}")
    rng = np.random.default_rng(seed)
    total = 0
    violations_ktc = 0
    violations_krc = 0
    max_excess = 0.0
    for dim_a, dim_b in dims:
        n = min(dim_a, dim_b)
        if n < 2:
            raise ValueError(f"order sweep needs local dimensions >= 2, got {dim_a} x {dim_b}")
        lambdas = _haar_lambda_batch(dim_a, dim_b, samples_per_dim, rng)
        boundary = np.array([np.pad(b, (0, n - b.shape[0])) for b in _boundary_lambdas(n)])
        lambdas = np.vstack([lambdas, boundary])
        excesses = _chain_excesses(lambdas, n)
        total += lambdas.shape[0]
        violations_ktc += int(np.count_nonzero(excesses[:, 0] > slack))
        violations_krc += int(np.count_nonzero(excesses[:, 1] > slack))
        max_excess = max(max_excess, float(np.max(excesses)))
    witness_r_gt_t, witness_t_gt_r = tangle_robustness_witnesses()
    return OrderReport(
        samples=total,
        violations_k_t_c=violations_ktc,
        violations_k_r_c=violations_krc,
        max_slack_used=max(max_excess, 0.0),
        witness_t_gt_r=witness_t_gt_r,
        witness_r_gt_t=witness_r_gt_t,
    )
