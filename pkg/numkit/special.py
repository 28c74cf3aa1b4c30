"""
Dimensional constants: volume of the Euclidean unit ball and the mean
norm of a standard Gaussian vector, both through log-Gamma.
"""

import math
import sys

from scipy.special import gammaln

from numkit.errors import DomainError

_LOG_MAX = math.log(sys.float_info.max)
_LOG_MIN = math.log(sys.float_info.min)


def _check_dim(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    return int(n)


def unit_ball_volume(n: int) -> float:
    """
    Volume ω_n of the Euclidean unit ball in R^n.

    Args:
        n: Dimension (n >= 1).

    Returns:
        π^{n/2} / Γ(n/2 + 1).
    """
    return math.exp(log_unit_ball_volume(n))


def log_unit_ball_volume(n: int) -> float:
    n = _check_dim(n)
    return 0.5 * n * math.log(math.pi) - float(gammaln(0.5 * n + 1.0))


def exp_checked(log_value: float, what: str) -> float:
    """
    exp(log_value), refusing results a double cannot hold.

    Raises:
        DomainError: If the value would overflow or fall below the smallest
            normal double.
    """
    if not _LOG_MIN <= log_value <= _LOG_MAX:
        raise DomainError(f"{what} is outside the double range (log value {log_value:.6g})")
    return math.exp(log_value)


def unit_sphere_area(n: int) -> float:
    """Surface area n·ω_n of the unit sphere S^{n-1}."""
    return _check_dim(n) * unit_ball_volume(n)


def gaussian_norm_mean(n: int) -> float:
    """
    Mean Euclidean norm d_n = E|G| of a standard Gaussian vector in R^n.

    For any seminorm, E‖G‖ = d_n ∫_{S^{n-1}} ‖ξ‖ dσ(ξ).

    Args:
        n: Dimension (n >= 1).

    Returns:
        √2 · Γ((n+1)/2) / Γ(n/2).
    """
    n = _check_dim(n)
    return math.sqrt(2.0) * math.exp(gammaln(0.5 * (n + 1)) - gammaln(0.5 * n))


def volume_radius(volume: float, n: int) -> float:
    """Radius of the n-ball whose volume equals `volume`."""
    if not volume > 0:
        raise DomainError(f"volume must be positive, got {volume}")
    return math.exp((math.log(volume) - log_unit_ball_volume(n)) / n)
