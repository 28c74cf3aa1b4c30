"""
Dense symmetric linear algebra: cyclic Jacobi eigensolver and
deterministic Gram-Schmidt orthonormalization.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from config import JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE, MAX_DIMENSION
from numkit.errors import DomainError, NonConvergence, RankDeficient

logger = logging.getLogger(__name__)

GRAM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SymMatrix:
    """A dense real symmetric matrix, symmetric exactly as stored."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise DomainError("matrix is not exactly symmetric")
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix has non-finite entries")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def symmetrized(cls, a: np.ndarray) -> "SymMatrix":
        """Build from (A + Aᵀ)/2, which is symmetric bit for bit."""
        a = np.asarray(a, dtype=float)
        return cls(0.5 * (a + a.T))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    # Annihilate a[p, q] with a plane rotation; updates a and v in place.
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    if abs(theta) > 1e150:
        # theta² would overflow; t ~ 1/(2θ) to double precision
        t = 1.0 / (2.0 * theta)
    else:
        t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def sym_eigen(
    matrix: Union[SymMatrix, np.ndarray],
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    tolerance: float = JACOBI_TOLERANCE,
) -> EigenDecomposition:
    """
    Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Args:
        matrix: SymMatrix (or an exactly symmetric array), dim <= MAX_DIMENSION.
        max_sweeps: Number of full sweeps before giving up.
        tolerance: Stop once the off-diagonal Frobenius norm is below
            tolerance * ‖A‖_F.

    Returns:
        EigenDecomposition with ascending eigenvalues. Equal eigenvalues keep
        the order in which their columns emerged from the sweeps.

    Raises:
        NonConvergence: If the sweep budget is exhausted.
    """
    if not isinstance(matrix, SymMatrix):
        matrix = SymMatrix(matrix)
    n = matrix.dim
    if n > MAX_DIMENSION:
        raise DomainError(f"dimension {n} exceeds the eigensolver cap {MAX_DIMENSION}")

    a = np.array(matrix.entries, dtype=float)
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    threshold = tolerance * scale

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps == max_sweeps:
            raise NonConvergence(
                f"Jacobi sweeps did not converge after {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(a):.3e}, target {threshold:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        sweeps += 1

    logger.debug(f"Jacobi converged in {sweeps} sweeps for n={n}")
    diagonal = np.diag(a).copy()
    order = np.argsort(diagonal, kind="stable")
    return EigenDecomposition(eigenvalues=diagonal[order], eigenvectors=v[:, order])


def _as_columns(columns: Union[Sequence[Sequence[float]], np.ndarray]) -> np.ndarray:
    if isinstance(columns, np.ndarray):
        return np.array(columns, dtype=float, ndmin=2)
    # A list of vectors: each entry is one column
    return np.array(columns, dtype=float, ndmin=2).T


def orthonormalize(columns: Union[Sequence[Sequence[float]], np.ndarray]) -> np.ndarray:
    """
    Orthonormal frame spanning the same space as the given columns.

    Modified Gram-Schmidt with one reorthogonalization pass, in fixed column
    order. Each pivot is a positive norm, so the triangular factor has a
    positive diagonal and the result is unique for the input.

    Args:
        columns: Either an n x k array whose columns are the vectors, or a
            list of k vectors of length n.

    Returns:
        n x k array with orthonormal columns.

    Raises:
        RankDeficient: If the normalized Gram determinant is <= 1e-12.
    """
    g = _as_columns(columns)
    n, k = g.shape
    if k > n:
        raise RankDeficient(f"{k} vectors cannot be independent in R^{n}")
    norms = np.linalg.norm(g, axis=0)
    if np.any(norms == 0.0):
        raise RankDeficient("zero vector among the columns")
    unit = g / norms
    gram = float(np.linalg.det(unit.T @ unit))
    if gram <= GRAM_TOLERANCE:
        raise RankDeficient(f"normalized Gram determinant {gram:.3e} too small")

    q = np.zeros((n, k))
    for j in range(k):
        w = unit[:, j].copy()
        for _ in range(2):
            for i in range(j):
                w -= (q[:, i] @ w) * q[:, i]
        q[:, j] = w / np.linalg.norm(w)
    return q


def orthonormalize_batch(stack: np.ndarray) -> np.ndarray:
    """
    Vectorized modified Gram-Schmidt over a stack of n x k matrices.

    Args:
        stack: Array of shape (m, n, k).

    Returns:
        Array of the same shape with orthonormal columns in every slice.

    Raises:
        RankDeficient: If any slice has a pivot norm below 1e-12.
    """
    g = np.array(stack, dtype=float)
    m, n, k = g.shape
    q = np.zeros_like(g)
    for j in range(k):
        w = g[:, :, j]
        for _ in range(2):
            for i in range(j):
                w = w - np.sum(q[:, :, i] * w, axis=1, keepdims=True) * q[:, :, i]
        norm = np.linalg.norm(w, axis=1, keepdims=True)
        if np.any(norm < GRAM_TOLERANCE):
            raise RankDeficient("degenerate column in batched orthonormalization")
        q[:, :, j] = w / norm
    return q


def orthonormality_residual(frame: np.ndarray) -> float:
    """max |FᵀF - I| for a frame with orthonormal columns."""
    frame = np.asarray(frame, dtype=float)
    return float(np.max(np.abs(frame.T @ frame - np.eye(frame.shape[1]))))
