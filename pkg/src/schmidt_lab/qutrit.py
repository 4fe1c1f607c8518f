"""Two-qutrit spin-1 Heisenberg model with exact dynamics.

The interaction Hamiltonian H = hbar*omega (sx(x)sx + sy(x)sy + sz(x)sz)
has a nine-state analytic eigenbasis: five eigenstates at +hbar*omega,
three at -hbar*omega, one at -2*hbar*omega. Time evolution is the exact
eigenbasis expansion psi(t) = sum_n alpha_n exp(-i E_n omega t) E_n with
hbar = 1, omega in rad/ps, t in ps. No integrator is involved, so evolved
states are exact up to rounding.

Product basis order is up-up, up-o, up-down, o-up, o-o, o-down, down-up,
down-o, down-down (first factor major, index 3*i + j), matching the
projector listing used by the trace output.

Starting from a sigma_z (x) sigma_z eigenstate, the Schmidt coefficients
follow closed forms, grouped in four cases by initial state:

    case 0  |up,up>    constant (1, 0, 0)
    case 1  |up,o>     (|cos wt|, |sin wt|, 0), period pi/2
    case 2  |up,down>  three-term form below, period 2*pi
    case 3  |o,o>      (sqrt(5+4cos 3wt)/3, 2|sin(3wt/2)|/3 twice), period 2*pi/3

These closed forms are the oracles the SVD path is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError
from .measures import MeasureReport, all_measures
from .schmidt import BipartiteState

BASIS_LABELS = ("uu", "uo", "ud", "ou", "oo", "od", "du", "do", "dd")

# initial product state (basis index) whose dynamics each case describes
CASE_INITIAL_INDEX = {0: 0, 1: 1, 2: 2, 3: 4}

_STATE_NORM_TOL = 1e-10
_RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class Spin1Operators:
    """The three dimensionless spin-1 matrices."""

    sx: np.ndarray = field(repr=False)
    sy: np.ndarray = field(repr=False)
    sz: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class EnergyEigenbasis:
    """Analytic eigenbasis of the Heisenberg interaction.

    ``vectors[k]`` is the k-th eigenvector as a row in the product basis;
    ``energies[k]`` is its eigenvalue in units of hbar*omega.
    """

    vectors: np.ndarray = field(repr=False)
    energies: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SimulationTrace:
    """Per-time Schmidt data and projector expectations along a grid.

    ``lambdas`` has shape (len(times), 3) with descending rows;
    ``projector_expectations`` has shape (len(times), 9) ordered as
    BASIS_LABELS; ``measures`` holds one MeasureReport per time.
    """

    times: np.ndarray = field(repr=False)
    lambdas: np.ndarray = field(repr=False)
    measures: tuple[MeasureReport, ...] = field(repr=False)
    projector_expectations: np.ndarray = field(repr=False)


def spin1_matrices() -> Spin1Operators:
    """The spin-1 matrices with sigma_z eigenvalues (1, 0, -1)."""
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    sx = inv_sqrt2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
    sy = inv_sqrt2 * 1j * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=np.complex128)
    sz = np.array([[1, 0, 0], [0, 0, 0], [0, 0, -1]], dtype=np.complex128)
    return Spin1Operators(sx=sx, sy=sy, sz=sz)


def heisenberg_hamiltonian(omega: float = 1.0) -> np.ndarray:
    """hbar*omega (sx(x)sx + sy(x)sy + sz(x)sz) with hbar = 1, as 9x9."""
    if not np.isfinite(omega):
        raise ValueError(f"omega must be finite, got {omega!r}")
    ops = spin1_matrices()
    h = np.kron(ops.sx, ops.sx) + np.kron(ops.sy, ops.sy) + np.kron(ops.sz, ops.sz)
    return omega * h


def _basis_vector(index: int) -> np.ndarray:
    v = np.zeros(9, dtype=np.complex128)
    v[index] = 1.0
    return v


def analytic_eigenbasis() -> EnergyEigenbasis:
    """The nine closed-form eigenvectors with their printed signs."""
    e = [_basis_vector(k) for k in range(9)]
    s2 = 1.0 / np.sqrt(2.0)
    s3 = 1.0 / np.sqrt(3.0)
    s6 = 1.0 / np.sqrt(6.0)
    vectors = np.array(
        [
            e[0],                                # |up,up>
            s2 * (e[1] + e[3]),                  # symmetric up/o pair
            s6 * (e[2] + 2 * e[4] + e[6]),       # up,down + 2 o,o + down,up
            s2 * (e[5] + e[7]),                  # symmetric o/down pair
            e[8],                                # |down,down>
            -s2 * (e[1] - e[3]),                 # antisymmetric up/o pair
            -s2 * (e[2] - e[6]),                 # antisymmetric up/down pair
            -s2 * (e[5] - e[7]),                 # antisymmetric o/down pair
            s3 * (e[2] - e[4] + e[6]),           # the -2 hbar*omega singlet
        ]
    )
    energies = np.array([1, 1, 1, 1, 1, -1, -1, -1, -2], dtype=float)
    return EnergyEigenbasis(vectors=vectors, energies=energies)


_EIGENBASIS = analytic_eigenbasis()


def evolve(psi0: np.ndarray, t: float, omega: float = 1.0) -> np.ndarray:
    """psi(t) = sum_n <E_n|psi0> exp(-i E_n omega t) E_n.

    ``psi0`` must be a normalized 9-vector; the result keeps unit norm to
    rounding since the expansion is unitary.
    """
    psi = np.asarray(psi0, dtype=np.complex128).reshape(-1)
    if psi.shape[0] != 9:
        raise ValueError(f"expected a 9-component state, got {psi.shape[0]}")
    deficit = abs(float(np.linalg.norm(psi)) - 1.0)
    if deficit > _STATE_NORM_TOL:
        raise NormalizationError(deficit)
    basis = _EIGENBASIS
    alphas = basis.vectors.conj() @ psi
    phases = np.exp(-1j * basis.energies * omega * t)
    return (alphas * phases) @ basis.vectors


def _sqrt_clamped(radicand: float, what: str) -> float:
    if radicand < 0.0:
        if radicand < -_RADICAND_TOL:
            raise ValueError(f"{what} radicand {radicand!r} is negative beyond rounding")
        radicand = 0.0
    return float(np.sqrt(radicand))


def closed_form_lambdas(case: int, omega_t: float) -> tuple[float, float, float]:
    """Analytic Schmidt coefficients for the four dynamic cases, descending.

    ``omega_t`` is the dimensionless product omega * t in radians. The
    printed formulas are not always in descending order, so the triple is
    re-sorted before returning.
    """
    x = float(omega_t)
    if case == 0:
        lam = (1.0, 0.0, 0.0)
    elif case == 1:
        lam = (abs(np.cos(x)), abs(np.sin(x)), 0.0)
    elif case == 2:
        l1 = (1.0 / 3.0) * _sqrt_clamped(
            3.5 + 3.0 * np.cos(x) + 1.5 * np.cos(2.0 * x) + np.cos(3.0 * x), "case-2 lambda1"
        )
        l2 = (2.0 / 3.0) * _sqrt_clamped(5.0 + 4.0 * np.cos(x), "case-2 lambda2") * np.sin(0.5 * x) ** 2
        l3 = (2.0 / 3.0) * abs(np.sin(1.5 * x))
        lam = (l1, l2, l3)
    elif case == 3:
        l1 = (1.0 / 3.0) * _sqrt_clamped(5.0 + 4.0 * np.cos(3.0 * x), "case-3 lambda1")
        l23 = (2.0 / 3.0) * abs(np.sin(1.5 * x))
        lam = (l1, l23, l23)
    else:
        raise ValueError(f"case must be one of 0, 1, 2, 3, got {case!r}")
    ordered = tuple(sorted((float(v) for v in lam), reverse=True))
    return ordered  # type: ignore[return-value]


def case_initial_state(case: int) -> np.ndarray:
    """The product basis state whose evolution each case's formulas track."""
    if case not in CASE_INITIAL_INDEX:
        raise ValueError(f"case must be one of 0, 1, 2, 3, got {case!r}")
    return _basis_vector(CASE_INITIAL_INDEX[case])


def projector_expectations(psi: np.ndarray) -> np.ndarray:
    """Expectations of the nine product-basis projectors: |psi_k|^2."""
    p = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if p.shape[0] != 9:
        raise ValueError(f"expected a 9-component state, got {p.shape[0]}")
    deficit = abs(float(np.linalg.norm(p)) - 1.0)
    if deficit > _STATE_NORM_TOL:
        raise NormalizationError(deficit)
    return np.abs(p) ** 2


def simulate(psi0: np.ndarray, t_grid: np.ndarray, omega: float = 1.0) -> SimulationTrace:
    """Evolve ``psi0`` along ``t_grid`` (ps) and collect per-time data.

    Each grid point is evolved exactly, Schmidt-decomposed as a 3x3
    bipartite state, measured, and projected onto the product basis.
    """
    times = np.array(t_grid, dtype=float).reshape(-1)
    if times.size == 0:
        raise ValueError("time grid is empty")
    if times.size > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("time grid must be strictly increasing")
    lambdas = np.empty((times.size, 3))
    projections = np.empty((times.size, 9))
    reports: list[MeasureReport] = []
    for k, t in enumerate(times):
        psi = evolve(psi0, float(t), omega)
        report = all_measures(BipartiteState(3, 3, psi))
        reports.append(report)
        lambdas[k] = report.lambdas
        projections[k] = projector_expectations(psi)
    for array in (times, lambdas, projections):
        array.flags.writeable = False
    return SimulationTrace(
        times=times,
        lambdas=lambdas,
        measures=tuple(reports),
        projector_expectations=projections,
    )
