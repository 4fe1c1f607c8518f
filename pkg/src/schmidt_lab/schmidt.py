"""Schmidt decomposition of bipartite pure states.

A pure state of a ``dim_a x dim_b`` system is a normalized vector of
``dim_a * dim_b`` complex amplitudes. Flattening convention: the amplitude
for basis ket ``|i>|j>`` lives at index ``i * dim_b + j``, so reshaping to
``(dim_a, dim_b)`` recovers the coefficient matrix whose SVD is the Schmidt
decomposition. The Schmidt coefficients are the singular values, sorted
descending, and satisfy sum(lambda^2) = 1 exactly when the state is
normalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError
from .linalg import svd

NORM_TOL = 1e-10
RANK_TOL = 1e-10


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(array)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class BipartiteState:
    """Normalized pure state of a ``dim_a x dim_b`` bipartite system.

    Parameters
    ----------
    dim_a, dim_b : int
        Local dimensions, each >= 1.
    amplitudes : array_like
        ``dim_a * dim_b`` complex amplitudes, index ``i * dim_b + j`` for
        ``|i>|j>``. Must be normalized to within ``NORM_TOL``; use
        :meth:`renormalized` for inputs that are only approximately unit.
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError(f"dimensions must be >= 1, got {self.dim_a} x {self.dim_b}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != self.dim_a * self.dim_b:
            raise ValueError(
                f"expected {self.dim_a * self.dim_b} amplitudes for a "
                f"{self.dim_a} x {self.dim_b} system, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes contain non-finite entries")
        norm = float(np.linalg.norm(amps))
        deficit = abs(norm - 1.0)
        if deficit > NORM_TOL:
            raise NormalizationError(deficit)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def renormalized(cls, dim_a: int, dim_b: int, amplitudes: np.ndarray) -> "BipartiteState":
        """Build a state from amplitudes of any nonzero norm, rescaling to 1."""
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite amplitude vector")
        return cls(dim_a, dim_b, amps / norm)

    @property
    def n(self) -> int:
        """min(dim_a, dim_b): the number of Schmidt coefficients."""
        return min(self.dim_a, self.dim_b)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Result of a Schmidt decomposition.

    Attributes
    ----------
    lambdas : (n,) float array
        Schmidt coefficients, descending, sum of squares 1.
    u : (dim_a, dim_a) complex array
        Columns are the left Schmidt basis (plus null-space completion).
    vdag : (dim_b, dim_b) complex array
        Row k is the conjugate of the k-th right Schmidt vector.
    """

    lambdas: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    vdag: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", _frozen(np.asarray(self.lambdas, dtype=float)))
        object.__setattr__(self, "u", _frozen(np.asarray(self.u, dtype=np.complex128)))
        object.__setattr__(self, "vdag", _frozen(np.asarray(self.vdag, dtype=np.complex128)))

    @property
    def n(self) -> int:
        return int(self.lambdas.shape[0])


def reshape_to_matrix(state: BipartiteState) -> np.ndarray:
    """Coefficient matrix C with C[i, j] = amplitude of ``|i>|j>``."""
    return state.amplitudes.reshape(state.dim_a, state.dim_b).copy()


def state_from_matrix(coefficients: np.ndarray) -> BipartiteState:
    """Inverse of :func:`reshape_to_matrix`: wrap a coefficient matrix."""
    c = np.asarray(coefficients, dtype=np.complex128)
    if c.ndim != 2:
        raise ValueError(f"coefficient matrix must be 2-dimensional, got shape {c.shape}")
    return BipartiteState(c.shape[0], c.shape[1], c.reshape(-1))


def schmidt_decompose(state: BipartiteState) -> SchmidtDecomposition:
    """Schmidt-decompose a bipartite pure state via SVD of its matrix."""
    u, sigma, vdag = svd(reshape_to_matrix(state))
    return SchmidtDecomposition(lambdas=sigma, u=u, vdag=vdag)


def reconstruct_amplitudes(decomposition: SchmidtDecomposition) -> np.ndarray:
    """Flattened amplitudes of sum_k lambda_k |u_k>|v_k>.

    Round-trips :func:`schmidt_decompose` to machine precision; used by
    tests to certify the factorization.
    """
    lam = decomposition.lambdas
    u = decomposition.u
    vdag = decomposition.vdag
    k = lam.shape[0]
    matrix = (u[:, :k] * lam) @ vdag[:k, :]
    return matrix.reshape(-1)


def schmidt_rank(lambdas: np.ndarray, tol: float = RANK_TOL) -> int:
    """Number of Schmidt coefficients exceeding ``tol``.

    Rank 1 means the state is a product state at this tolerance.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.size and (np.any(lam < -tol) or np.any(np.diff(lam) > tol)):
        raise ValueError("lambdas must be non-negative and sorted descending")
    return int(np.count_nonzero(lam > tol))
