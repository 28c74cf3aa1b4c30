"""
Quermassintegrals and related averages of ellipsoids.

Every Monte-Carlo integrand here is evaluated in the principal coordinates
of the ellipsoid. The rotation-invariant sphere and Grassmann measures do
not see that change of basis, and it means two calls that share a stream
use the same sample points (common random numbers). All integrands are
also nondecreasing in each semi-axis, sample by sample, so comparisons
between nested or interlaced ellipsoids hold exactly for the estimates,
not only in expectation.
"""

import logging
from typing import Callable

import numpy as np

from config import CHUNK_SIZE, DEFAULT_WORKERS
from ellipsoid.ellipsoid import Ellipsoid, RevolutionEllipsoid, ellipse_perimeter, volume
from numkit.errors import DomainError
from numkit.special import unit_ball_volume
from sampling.estimator import McEstimate
from sampling.rng import RngStream
from sampling.sphere import mc_grassmann_average, mc_sphere_integral

logger = logging.getLogger(__name__)


def exact(value: float, samples: int, rng: RngStream) -> McEstimate:
    """Wrap a closed-form value as a zero-variance estimate."""
    return McEstimate(mean=value, stderr=0.0, samples=max(int(samples), 2), seed=rng.seed)


def _sphere(
    body: Ellipsoid,
    integrand: Callable[[np.ndarray], np.ndarray],
    samples: int,
    rng: RngStream,
    chunk_size: int,
    workers: int,
) -> McEstimate:
    return mc_sphere_integral(integrand, body.dim, samples, rng, chunk_size, workers)


def surface_rivin(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Surface area S(E) = n·|E|·∫_{S^{n-1}} (Σ ξ_i²/a_i²)^{1/2} dσ(ξ).

    The integrand is written as (Σ ξ_i² Π_{j≠i} a_j²)^{1/2}, which is the
    same quantity multiplied by Π a_i and visibly increasing in every a_j.

    Args:
        body: The ellipsoid.
        samples: Number of sphere points.
        rng: Stream for the sphere points.

    Returns:
        McEstimate of S(E).
    """
    n = body.dim
    log_axes = np.log(body.axes)
    weights = np.exp(2.0 * (np.sum(log_axes) - log_axes))
    estimate = _sphere(body, lambda xi: np.sqrt((xi * xi) @ weights), samples, rng, chunk_size, workers)
    return estimate * (n * unit_ball_volume(n))


def mean_width(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """w(E) = ∫ h_E dσ (half the classical mean width; w(B_2^n) = 1)."""
    weights = body.axes ** 2
    return _sphere(body, lambda xi: np.sqrt((xi * xi) @ weights), samples, rng, chunk_size, workers)


def mean_norm(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """M(E) = ∫ ‖ξ‖_E dσ."""
    weights = body.axes ** -2.0
    return _sphere(body, lambda xi: np.sqrt((xi * xi) @ weights), samples, rng, chunk_size, workers)


def quermass_kubota(
    body: Ellipsoid,
    j: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    W_j(E) by Kubota's formula.

    W_j(E) = (ω_n/ω_{n-j}) ∫_{G_{n,n-j}} |P_H E| dν, and for an ellipsoid
    |P_H E| = ω_{n-j}·√det(UᵀA⁻¹U), so
    W_j(E) = ω_n ∫ √det(Uᵀ diag(a²) U) dν(U) in principal coordinates.

    Args:
        body: The ellipsoid (dimension n).
        j: Index with 1 <= j <= n-1.
        samples: Number of Haar subspaces.
        rng: Stream for the subspaces.

    Returns:
        McEstimate of W_j(E).
    """
    n = body.dim
    if not 1 <= j <= n - 1:
        raise DomainError(f"Kubota's formula needs 1 <= j <= n-1, got j={j}, n={n}")
    squared = body.axes ** 2

    def projected(frames: np.ndarray) -> np.ndarray:
        gram = np.einsum("mik,i,mil->mkl", frames, squared, frames)
        return np.sqrt(np.clip(np.linalg.det(gram), 0.0, None))

    estimate = mc_grassmann_average(projected, n, n - j, samples, rng, chunk_size, workers)
    return estimate * unit_ball_volume(n)


def quermass_revolution(
    body: RevolutionEllipsoid,
    j: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    W_j(E_{r,s}) = ω_m r^{m-j} ∫_{S^{m-1}} ((s²/r²) Σ_{i≤m-j} θ_i² + Σ_{i>m-j} θ_i²)^{1/2} dσ(θ).

    Args:
        body: E_{r,s} in R^m.
        j: Index with 0 <= j <= m.

    Returns:
        McEstimate of W_j(E_{r,s}).
    """
    m, r, s = body.dim, body.r, body.s
    if not 0 <= j <= m:
        raise DomainError(f"need 0 <= j <= m, got j={j}, m={m}")
    split = m - j
    weights = np.concatenate([np.full(split, s * s), np.full(j, r * r)])
    estimate = mc_sphere_integral(
        lambda theta: np.sqrt((theta * theta) @ weights), m, samples, rng, chunk_size, workers
    )
    return estimate * (unit_ball_volume(m) * r ** (split - 1))


def quermass(
    body: Ellipsoid,
    j: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    W_j(E), using a closed form whenever one exists.

    j = 0 is the volume and j = n is ω_n; in the plane W_1 is half the
    perimeter (complete elliptic integral). Otherwise W_1 = S/n through
    Rivin's formula and the remaining indices go through Kubota's formula.
    Closed-form values come back with stderr 0.
    """
    n = body.dim
    if not 0 <= j <= n:
        raise DomainError(f"need 0 <= j <= n, got j={j}, n={n}")
    if j == 0:
        return exact(volume(body), samples, rng)
    if j == n:
        return exact(unit_ball_volume(n), samples, rng)
    if n == 2:
        return exact(0.5 * ellipse_perimeter(*body.axes), samples, rng)
    if j == 1:
        return surface_rivin(body, samples, rng, chunk_size, workers) / n
    return quermass_kubota(body, j, samples, rng, chunk_size, workers)


def surface_area(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """S(E) = n·W_1(E): exact for n <= 2, Rivin's formula otherwise."""
    if body.dim == 1:
        return exact(2.0, samples, rng)
    return quermass(body, 1, samples, rng, chunk_size, workers) * body.dim


def q_k(
    body: Ellipsoid,
    k: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Normalized quermassintegral Q_k(E) = (W_{n-k}(E)/ω_n)^{1/k}.

    Q_n is the volume radius and Q_1 = w(E); k ↦ Q_k is decreasing.
    """
    n = body.dim
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    return (quermass(body, n - k, samples, rng, chunk_size, workers) / unit_ball_volume(n)) ** (1.0 / k)


def dual_affine_ball_value(n: int, k: int) -> float:
    """Φ̃_[k](B_2^n) = ω_n^{-(n-k)/(nk)}·ω_{n-k}^{1/k}, the maximum over all bodies."""
    return unit_ball_volume(n) ** (-(n - k) / (n * k)) * unit_ball_volume(n - k) ** (1.0 / k)


def dual_affine_quermass(
    body: Ellipsoid,
    k: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Normalized dual affine quermassintegral

        Φ̃_[k](E) = |E|^{-(n-k)/(nk)} (∫_{G_{n,k}} |E ∩ H^⊥|^n dν(H))^{1/(kn)}.

    H^⊥ is Haar distributed on G_{n,n-k}, and |E ∩ V| = ω_{n-k}/√det(VᵀAV).
    The section volume is divided by |E|^{(n-k)/n} before raising it to
    the n-th power, which keeps the integrand scale free.

    Args:
        body: The ellipsoid (dimension n).
        k: Index with 1 <= k <= n-1.

    Returns:
        McEstimate of Φ̃_[k](E).
    """
    n = body.dim
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    inverse_squared = body.axes ** -2.0
    scale = unit_ball_volume(n - k) / volume(body) ** ((n - k) / n)

    def section_power(frames: np.ndarray) -> np.ndarray:
        gram = np.einsum("mik,i,mil->mkl", frames, inverse_squared, frames)
        return (scale / np.sqrt(np.linalg.det(gram))) ** n

    moment = mc_grassmann_average(section_power, n, n - k, samples, rng, chunk_size, workers)
    return moment ** (1.0 / (k * n))


def avg_section_surfaceless(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    as(E) = ∫_{S^{n-1}} |E ∩ ξ^⊥| dσ(ξ), the average hyperplane section volume.
    """
    n = body.dim
    if n < 2:
        raise DomainError("hyperplane sections need n >= 2")
    numerator = unit_ball_volume(n - 1) * float(np.prod(body.axes))
    squared = body.axes ** 2
    return _sphere(body, lambda xi: numerator / np.sqrt((xi * xi) @ squared), samples, rng, chunk_size, workers)


def surface_section_lower_constant(n: int) -> float:
    """n·ω_n/ω_{n-1}: S(K) >= this · as(K), with equality for the ball."""
    return n * unit_ball_volume(n) / unit_ball_volume(n - 1)


def kz_dual(
    body: Ellipsoid,
    j: int,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Right-hand side of W_{n-j}(E) = (|E|/ω_n)·W_j(E°), evaluated on the polar.
    """
    n = body.dim
    polar_value = quermass(body.polar(), j, samples, rng, chunk_size, workers)
    return polar_value * (volume(body) / unit_ball_volume(n))
