"""
Sampling on the sphere, in Gauss space and on the Grassmannian, plus the
Monte-Carlo integrals and extremum scans built on them.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from config import CHUNK_SIZE, DEFAULT_WORKERS, MAX_RESAMPLES, ORTHONORMAL_TOLERANCE
from numkit.errors import DegenerateSample, DomainError, RankDeficient
from numkit.linalg import orthonormalize, orthonormalize_batch, orthonormality_residual
from sampling.estimator import McEstimate, chunked_estimate
from sampling.rng import RngStream

logger = logging.getLogger(__name__)

DEGENERATE_NORM = 1e-12


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional linear subspace of R^n given by an orthonormal frame."""

    frame: np.ndarray

    def __post_init__(self):
        frame = np.array(self.frame, dtype=float, ndmin=2)
        if frame.ndim != 2:
            raise DomainError(f"frame must be an n x k array, got shape {frame.shape}")
        n, k = frame.shape
        if not 1 <= k <= n:
            raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
        residual = orthonormality_residual(frame)
        if residual > ORTHONORMAL_TOLERANCE:
            raise DomainError(f"frame is not orthonormal (residual {residual:.2e})")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @classmethod
    def spanned_by(cls, vectors) -> "Subspace":
        """Subspace spanned by a list of vectors (orthonormalized in order)."""
        return cls(orthonormalize(vectors))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors e_i, i in `indices` (0-based)."""
        return cls(np.eye(n)[:, list(indices)])

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.T

    def complement(self) -> "Subspace":
        """Orthogonal complement (requires dim < ambient_dim)."""
        if self.dim == self.ambient_dim:
            raise DomainError("the full space has no nontrivial complement")
        u, _, _ = np.linalg.svd(self.frame, full_matrices=True)
        return Subspace(orthonormalize(u[:, self.dim:]))

    def rotated(self, rotation: np.ndarray) -> "Subspace":
        return Subspace(np.asarray(rotation, dtype=float) @ self.frame)


def _check_dims(n: int, k: Optional[int] = None) -> None:
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if k is not None and not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")


def gaussian_batch(n: int, count: int, generator: np.random.Generator) -> np.ndarray:
    """`count` standard Gaussian vectors in R^n, shape (count, n)."""
    return generator.standard_normal((count, n))


def sphere_batch(n: int, count: int, generator: np.random.Generator) -> np.ndarray:
    """
    `count` uniform points on S^{n-1}: normalized Gaussian vectors.

    Rows whose raw norm falls below 1e-12 are redrawn.
    """
    points = generator.standard_normal((count, n))
    norms = np.linalg.norm(points, axis=1)
    for _ in range(MAX_RESAMPLES):
        bad = norms < DEGENERATE_NORM
        if not np.any(bad):
            break
        points[bad] = generator.standard_normal((int(bad.sum()), n))
        norms[bad] = np.linalg.norm(points[bad], axis=1)
    else:
        raise DegenerateSample(f"degenerate Gaussian draw after {MAX_RESAMPLES} retries")
    return points / norms[:, None]


def grassmannian_batch(n: int, k: int, count: int, generator: np.random.Generator) -> np.ndarray:
    """
    `count` Haar-random orthonormal frames of k-dimensional subspaces,
    shape (count, n, k): orthonormalized standard Gaussian matrices.
    """
    for _ in range(MAX_RESAMPLES):
        try:
            return orthonormalize_batch(generator.standard_normal((count, n, k)))
        except RankDeficient:
            logger.debug("degenerate Gaussian frame, redrawing chunk")
    raise RankDeficient(f"degenerate Gaussian frame after {MAX_RESAMPLES} retries")


def sample_sphere(n: int, rng: RngStream) -> np.ndarray:
    """
    One uniform unit vector on S^{n-1}, the first draw of the stream.

    Args:
        n: Dimension (n >= 1).
        rng: Stream to draw from.

    Returns:
        Unit vector of length n.
    """
    _check_dims(n)
    return sphere_batch(n, 1, rng.generator())[0]


def sample_grassmannian(n: int, k: int, rng: RngStream) -> Subspace:
    """
    One Haar-random subspace H in G_{n,k}: the orthonormalization of an
    n x k standard Gaussian matrix (first draw of the stream).
    """
    _check_dims(n, k)
    generator = rng.generator()
    for _ in range(MAX_RESAMPLES):
        try:
            return Subspace(orthonormalize(generator.standard_normal((n, k))))
        except RankDeficient:
            continue
    raise RankDeficient(f"degenerate Gaussian frame after {MAX_RESAMPLES} retries")


def mc_sphere_integral(
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Estimate ∫_{S^{n-1}} f dσ for the rotation-invariant probability σ.

    Args:
        f: Vectorized field, (m, n) array of unit vectors -> (m,) values.
        n: Dimension.
        samples: Number of sphere points.
        rng: Stream; identical streams give identical points (common random numbers).

    Returns:
        McEstimate of the spherical average.
    """
    _check_dims(n)
    return chunked_estimate(lambda g, m: sphere_batch(n, m, g), f, samples, rng, chunk_size, workers)


def mc_gaussian_integral(
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """Estimate E f(G) for a standard Gaussian vector G in R^n."""
    _check_dims(n)
    return chunked_estimate(lambda g, m: gaussian_batch(n, m, g), f, samples, rng, chunk_size, workers)


def mc_grassmann_average(
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    k: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Estimate ∫_{G_{n,k}} f dν_{n,k} for the Haar probability ν_{n,k}.

    Args:
        f: Vectorized field, (m, n, k) stack of orthonormal frames -> (m,) values.
    """
    _check_dims(n, k)
    return chunked_estimate(lambda g, m: grassmannian_batch(n, k, m, g), f, samples, rng, chunk_size, workers)


def sphere_scan(
    f: Callable[[np.ndarray], np.ndarray],
    n: int,
    trials: int,
    rng: RngStream,
    include: Optional[np.ndarray] = None,
) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Best-of-N search for the maximum of f over S^{n-1}.

    The analytically predicted maximizer (`include`) is always evaluated
    first, so the scan only has to confirm that no random point beats it.

    Returns:
        (best value, best point, all values with the included point first).
    """
    _check_dims(n)
    points = sphere_batch(n, trials, rng.generator())
    if include is not None:
        extra = np.asarray(include, dtype=float).reshape(-1, n)
        points = np.vstack([extra / np.linalg.norm(extra, axis=1, keepdims=True), points])
    values = np.asarray(f(points), dtype=float)
    best = int(np.argmax(values))
    return float(values[best]), points[best], values
