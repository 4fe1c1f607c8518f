"""Dense complex matrix algebra for small systems (dimensions <= ~16).

Matrices are plain ``numpy.ndarray`` values with ``complex128`` entries,
row-major as numpy stores them. Products, adjoints and traces are numpy
operations; this module adds the contract-checked decompositions the rest
of the package relies on: a full SVD with a deterministic phase convention,
a guarded Hermitian eigendecomposition, and the Tr[(C C^dag)^2] shortcut.

Everything here is a pure function over immutable inputs and safe to call
from multiple threads.
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-10
_PHASE_TOL = 1e-12


def dagger(matrix: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(matrix).conj().T


def _as_finite_complex(matrix: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _fix_column_phases(u: np.ndarray, vdag: np.ndarray | None, k_max: int) -> None:
    """Make the first nonzero entry of each column of ``u`` real non-negative.

    Columns below ``k_max`` carry a compensating phase on the matching row of
    ``vdag`` so the product U diag(s) Vdag is unchanged. Operates in place.
    """
    for k in range(u.shape[1]):
        col = u[:, k]
        nz = np.flatnonzero(np.abs(col) > _PHASE_TOL)
        if nz.size == 0:
            continue
        phase = col[nz[0]] / abs(col[nz[0]])
        u[:, k] *= phase.conjugate()
        if vdag is not None and k < k_max:
            vdag[k, :] *= phase


def _fix_row_phases(vdag: np.ndarray, start: int) -> None:
    """Phase-fix rows of ``vdag`` from ``start`` on (null-space rows only)."""
    for k in range(start, vdag.shape[0]):
        row = vdag[k, :]
        nz = np.flatnonzero(np.abs(row) > _PHASE_TOL)
        if nz.size == 0:
            continue
        phase = row[nz[0]] / abs(row[nz[0]])
        vdag[k, :] *= phase.conjugate()


def svd(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full singular value decomposition M = U diag(sigma) Vdag.

    Parameters
    ----------
    matrix : (m, n) complex array

    Returns
    -------
    u : (m, m) unitary
    sigma : (min(m, n),) non-negative reals, sorted descending
    vdag : (n, n) unitary

    The first nonzero entry of every column of ``u`` is made real
    non-negative (with the compensating phase pushed into ``vdag``), so the
    factors are deterministic for golden-file comparisons. Column order
    inside a degenerate sigma cluster is unspecified; downstream code only
    relies on the sorted sigma values.
    """
    m = _as_finite_complex(matrix)
    u, sigma, vdag = np.linalg.svd(m, full_matrices=True)
    u = np.ascontiguousarray(u)
    vdag = np.ascontiguousarray(vdag)
    k = sigma.shape[0]
    _fix_column_phases(u, vdag, k)
    _fix_row_phases(vdag, k)
    return u, sigma, vdag


def hermitian_eig(matrix: np.ndarray, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the unitary matrix whose
    columns are the matching orthonormal eigenvectors. Rejects inputs whose
    Hermiticity residual ``max|H - H^dag|`` exceeds ``tol``.
    """
    h = _as_finite_complex(matrix)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    residual = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if residual > tol:
        raise ValueError(f"matrix is not Hermitian: residual {residual:.3e} > {tol:.1e}")
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    eigenvectors = np.ascontiguousarray(eigenvectors)
    _fix_column_phases(eigenvectors, None, 0)
    return eigenvalues, eigenvectors


def gram_trace_sq(matrix: np.ndarray) -> float:
    """Tr[(C C^dag)^2] for a coefficient matrix C.

    Equals the sum of the fourth powers of the singular values of C, but
    costs only two matrix products. Since C C^dag is Hermitian the trace of
    its square is the sum of squared magnitudes of its entries.
    """
    c = _as_finite_complex(matrix)
    gram = c @ c.conj().T
    value = float(np.sum(np.abs(gram) ** 2))
    return value
