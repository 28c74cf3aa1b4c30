"""
Centered ellipsoids as exact objects: construction, shape matrices, polar
body, central sections and orthogonal projections.

An ellipsoid stores its semi-axes in ascending order together with an
orthonormal frame whose column i is the direction of semi-axis i. A
section or projection onto a k-dimensional subspace H is again an
ellipsoid, expressed in the coordinates of H's frame; the frame of H is
kept as `embedding` so the result can be mapped back to R^n.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import ellipe

from config import CONDITIONING_CAP, ORTHONORMAL_TOLERANCE
from numkit.errors import DomainError
from numkit.linalg import SymMatrix, orthonormality_residual, sym_eigen
from numkit.special import exp_checked, log_unit_ball_volume, unit_ball_volume
from sampling.sphere import Subspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ellipsoid:
    """
    E = {x : ⟨Ax, x⟩ ≤ 1} with A = frame · diag(axes^-2) · frameᵀ.

    Attributes:
        axes: Semi-axes a_1 ≤ ... ≤ a_n, all positive.
        frame: n x n orthonormal matrix, column i is the direction of a_i.
        embedding: For sections and projections, the ambient frame of the
            subspace the ellipsoid lives in (None for a full-dimensional body).
    """

    axes: np.ndarray
    frame: Optional[np.ndarray] = None
    embedding: Optional[np.ndarray] = None

    def __post_init__(self):
        axes = np.array(self.axes, dtype=float, ndmin=1)
        if axes.ndim != 1 or axes.size < 1:
            raise DomainError(f"axes must be a non-empty vector, got shape {axes.shape}")
        if not np.all(np.isfinite(axes)) or np.any(axes <= 0.0):
            raise DomainError(f"semi-axes must be positive and finite, got {axes.tolist()}")
        if np.any(np.diff(axes) < 0.0):
            raise DomainError("semi-axes must be sorted ascending (use Ellipsoid.from_axes)")
        if axes[-1] / axes[0] > CONDITIONING_CAP:
            raise DomainError(
                f"axis ratio {axes[-1] / axes[0]:.3e} exceeds the conditioning cap {CONDITIONING_CAP:.0e}"
            )
        n = axes.size
        frame = np.eye(n) if self.frame is None else np.array(self.frame, dtype=float)
        if frame.shape != (n, n):
            raise DomainError(f"frame must be {n} x {n}, got {frame.shape}")
        if orthonormality_residual(frame) > ORTHONORMAL_TOLERANCE:
            raise DomainError("frame is not orthonormal")
        axes.setflags(write=False)
        frame.setflags(write=False)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "frame", frame)
        if self.embedding is not None:
            embedding = np.array(self.embedding, dtype=float)
            if embedding.ndim != 2 or embedding.shape[1] != n:
                raise DomainError(f"embedding must be m x {n}, got {embedding.shape}")
            embedding.setflags(write=False)
            object.__setattr__(self, "embedding", embedding)

    @classmethod
    def from_axes(
        cls,
        axes: Sequence[float],
        frame: Optional[np.ndarray] = None,
        embedding: Optional[np.ndarray] = None,
    ) -> "Ellipsoid":
        """
        Build from semi-axes in any order; the frame columns are permuted
        along with the axes. Equal axes keep their column order.
        """
        axes = np.array(axes, dtype=float, ndmin=1)
        order = np.argsort(axes, kind="stable")
        frame = np.eye(axes.size) if frame is None else np.asarray(frame, dtype=float)
        return cls(axes[order], frame[:, order], embedding)

    @classmethod
    def ball(cls, n: int, radius: float = 1.0) -> "Ellipsoid":
        return cls(np.full(n, float(radius)))

    @classmethod
    def from_matrix(cls, matrix: Union[SymMatrix, np.ndarray]) -> "Ellipsoid":
        """
        Ellipsoid {⟨Ax, x⟩ ≤ 1} of a symmetric positive definite A, with
        a_j = λ_{n-j+1}(A)^{-1/2}.
        """
        decomposition = sym_eigen(matrix)
        if decomposition.eigenvalues[0] <= 0.0:
            raise DomainError(f"shape matrix is not positive definite (λ_min = {decomposition.eigenvalues[0]:.3e})")
        return cls.from_axes(1.0 / np.sqrt(decomposition.eigenvalues), decomposition.eigenvectors)

    @property
    def dim(self) -> int:
        return self.axes.size

    ambient_dim = dim

    def shape_matrix(self) -> SymMatrix:
        return SymMatrix.symmetrized((self.frame / self.axes ** 2) @ self.frame.T)

    def inverse_shape(self) -> SymMatrix:
        return SymMatrix.symmetrized((self.frame * self.axes ** 2) @ self.frame.T)

    def volume(self) -> float:
        return volume(self)

    @property
    def inradius(self) -> float:
        return float(self.axes[0])

    @property
    def circumradius(self) -> float:
        return float(self.axes[-1])

    def is_ball(self) -> bool:
        return bool(self.axes[0] == self.axes[-1])

    def principal(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of the row vectors x in the principal frame."""
        return np.asarray(x, dtype=float) @ self.frame

    def minkowski_norm(self, x: np.ndarray) -> np.ndarray:
        """‖x‖_E = √⟨Ax, x⟩, vectorized over rows."""
        return np.linalg.norm(self.principal(x) / self.axes, axis=-1)

    def support(self, u: np.ndarray) -> np.ndarray:
        """h_E(u) = √⟨A⁻¹u, u⟩, vectorized over rows."""
        return np.linalg.norm(self.principal(u) * self.axes, axis=-1)

    def hyperplane_section_volume(self, xi: np.ndarray) -> np.ndarray:
        """
        |E ∩ ξ^⊥| = ω_{n-1}·Π a_i / h_E(ξ) for unit ξ, vectorized over rows.
        """
        if self.dim < 2:
            raise DomainError("hyperplane sections need n >= 2")
        return unit_ball_volume(self.dim - 1) * float(np.prod(self.axes)) / self.support(xi)

    def polar(self) -> "Ellipsoid":
        """E° has the reciprocal semi-axes along the same directions."""
        return Ellipsoid(1.0 / self.axes[::-1], self.frame[:, ::-1], self.embedding)

    def scaled(self, factor: float) -> "Ellipsoid":
        if not factor > 0.0:
            raise DomainError(f"scale factor must be positive, got {factor}")
        return Ellipsoid(self.axes * factor, self.frame, self.embedding)

    def rotated(self, rotation: np.ndarray) -> "Ellipsoid":
        """Q·E for an orthogonal Q."""
        return Ellipsoid(self.axes, np.asarray(rotation, dtype=float) @ self.frame, self.embedding)

    def normalized_volume(self, target: float = 1.0) -> "Ellipsoid":
        """Homothetic copy with volume `target`."""
        return self.scaled((target / self.volume()) ** (1.0 / self.dim))

    def axis_subspace(self, indices: Sequence[int]) -> Subspace:
        """Span of the principal directions with the given (0-based) indices."""
        return Subspace(self.frame[:, list(indices)])

    def describe(self) -> str:
        return "ellipsoid:" + ",".join(f"{a:.12g}" for a in self.axes)


@dataclass(frozen=True)
class RevolutionEllipsoid:
    """
    E_{r,s} = {x ∈ R^m : Σ_{i<m} x_i²/r² + x_m²/s² ≤ 1}.
    """

    dim: int
    r: float
    s: float

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dim}")
        if not (self.r > 0.0 and self.s > 0.0):
            raise DomainError(f"radii must be positive, got r={self.r}, s={self.s}")

    def to_ellipsoid(self) -> Ellipsoid:
        return Ellipsoid.from_axes([self.r] * (self.dim - 1) + [self.s])

    def volume(self) -> float:
        log_value = log_unit_ball_volume(self.dim) + (self.dim - 1) * math.log(self.r) + math.log(self.s)
        return exp_checked(log_value, "ellipsoid volume")


def volume(body: Ellipsoid) -> float:
    """|E| = ω_n · Π a_i."""
    return exp_checked(log_unit_ball_volume(body.dim) + float(np.sum(np.log(body.axes))), "ellipsoid volume")


def _subspace(body: Ellipsoid, subspace: Union[Subspace, np.ndarray]) -> Subspace:
    if not isinstance(subspace, Subspace):
        subspace = Subspace(subspace)
    if subspace.ambient_dim != body.dim:
        raise DomainError(f"subspace lives in R^{subspace.ambient_dim}, ellipsoid in R^{body.dim}")
    return subspace


def _compose(body: Ellipsoid, frame: np.ndarray) -> np.ndarray:
    return frame if body.embedding is None else body.embedding @ frame


def section(body: Ellipsoid, subspace: Union[Subspace, np.ndarray]) -> Ellipsoid:
    """
    Central section E ∩ H.

    With U the frame of H, E ∩ H = {Uy : yᵀ(UᵀAU)y ≤ 1}, so the semi-axes
    are b_j = λ_{k-j+1}(UᵀAU)^{-1/2}.

    Args:
        body: The ellipsoid E.
        subspace: H as a Subspace or an orthonormal n x k frame.

    Returns:
        k-dimensional Ellipsoid in H's coordinates, with H's frame as embedding.
    """
    subspace = _subspace(body, subspace)
    local = body.principal(subspace.frame.T).T
    compressed = SymMatrix.symmetrized((local.T / body.axes ** 2) @ local)
    decomposition = sym_eigen(compressed)
    if decomposition.eigenvalues[0] <= 0.0:
        raise DomainError("compressed shape matrix lost positive definiteness")
    return Ellipsoid.from_axes(
        1.0 / np.sqrt(decomposition.eigenvalues),
        decomposition.eigenvectors,
        _compose(body, subspace.frame),
    )


def projection(body: Ellipsoid, subspace: Union[Subspace, np.ndarray]) -> Ellipsoid:
    """
    Orthogonal projection P_H(E): semi-axes √λ(UᵀA⁻¹U), ascending.
    It is the polar, inside H, of E° ∩ H.
    """
    subspace = _subspace(body, subspace)
    local = body.principal(subspace.frame.T).T
    compressed = SymMatrix.symmetrized((local.T * body.axes ** 2) @ local)
    decomposition = sym_eigen(compressed)
    return Ellipsoid.from_axes(
        np.sqrt(np.clip(decomposition.eigenvalues, 0.0, None)),
        decomposition.eigenvectors,
        _compose(body, subspace.frame),
    )


def ellipse_perimeter(a: float, b: float) -> float:
    """
    Perimeter of the ellipse with semi-axes a and b:
    4·max(a, b)·E(1 − min²/max²), E the complete elliptic integral of the
    second kind (parameter convention m = k²).
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"semi-axes must be positive, got {a}, {b}")
    major, minor = max(a, b), min(a, b)
    return 4.0 * major * float(ellipe(1.0 - (minor / major) ** 2))
