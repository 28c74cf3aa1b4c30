"""
Closed-form families of origin-symmetric convex bodies.

Every family knows its Minkowski functional and support function in closed
form, together with exact volume, inradius and circumradius. All but the
ellipsoid also have an exact surface area.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ellipsoid.ellipsoid import Ellipsoid, ellipse_perimeter
from numkit.errors import DomainError
from numkit.special import exp_checked, log_unit_ball_volume


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if isinstance(value, bool) or not (math.isfinite(float(value)) and value > 0):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")


def _check_dimension(n: int, minimum: int = 1) -> None:
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise DomainError(f"dimension must be an integer >= {minimum}, got {n!r}")


class BodyFamily(ABC):
    """An origin-symmetric convex body with closed-form gauge functions."""

    dim: int

    @abstractmethod
    def minkowski_norm(self, x: np.ndarray) -> np.ndarray:
        """‖x‖_K, vectorized over the rows of x."""

    @abstractmethod
    def support(self, u: np.ndarray) -> np.ndarray:
        """h_K(u), vectorized over the rows of u."""

    @abstractmethod
    def volume(self) -> float:
        ...

    @abstractmethod
    def surface(self) -> Optional[float]:
        """Exact surface area, or None when only a Monte-Carlo value exists."""

    @abstractmethod
    def inradius(self) -> float:
        ...

    @abstractmethod
    def circumradius(self) -> float:
        ...

    @abstractmethod
    def scaled(self, factor: float) -> "BodyFamily":
        ...

    @abstractmethod
    def describe(self) -> str:
        """Textual description, in body-spec form where the grammar has one."""


@dataclass(frozen=True)
class Ball(BodyFamily):
    radius: float
    dim: int

    def __post_init__(self):
        _check_positive(radius=self.radius)
        _check_dimension(self.dim)

    def minkowski_norm(self, x):
        return np.linalg.norm(np.asarray(x, dtype=float), axis=-1) / self.radius

    def support(self, u):
        return self.radius * np.linalg.norm(np.asarray(u, dtype=float), axis=-1)

    def volume(self):
        return exp_checked(log_unit_ball_volume(self.dim) + self.dim * math.log(self.radius), "ball volume")

    def surface(self):
        n = self.dim
        return exp_checked(math.log(n) + log_unit_ball_volume(n) + (n - 1) * math.log(self.radius), "ball surface")

    def inradius(self):
        return float(self.radius)

    def circumradius(self):
        return float(self.radius)

    def scaled(self, factor):
        return Ball(self.radius * factor, self.dim)

    def describe(self):
        return f"ball:{self.radius:.12g}"


@dataclass(frozen=True)
class Cube(BodyFamily):
    """[-h, h]^n."""

    half_side: float
    dim: int

    def __post_init__(self):
        _check_positive(half_side=self.half_side)
        _check_dimension(self.dim)

    def minkowski_norm(self, x):
        return np.max(np.abs(np.asarray(x, dtype=float)), axis=-1) / self.half_side

    def support(self, u):
        return self.half_side * np.sum(np.abs(np.asarray(u, dtype=float)), axis=-1)

    def volume(self):
        return exp_checked(self.dim * math.log(2.0 * self.half_side), "cube volume")

    def surface(self):
        n = self.dim
        return exp_checked(math.log(2.0 * n) + (n - 1) * math.log(2.0 * self.half_side), "cube surface")

    def inradius(self):
        return float(self.half_side)

    def circumradius(self):
        return self.half_side * math.sqrt(self.dim)

    def scaled(self, factor):
        return Cube(self.half_side * factor, self.dim)

    def describe(self):
        return f"cube:{self.half_side:.12g}"


@dataclass(frozen=True)
class Box(BodyFamily):
    """
    P_{a,s} = {x : |x_1| ≤ s, |x_i| ≤ a for i ≥ 2} with 0 < s < a.
    """

    s: float
    a: float
    dim: int

    def __post_init__(self):
        _check_positive(s=self.s, a=self.a)
        _check_dimension(self.dim, 2)
        if not self.s < self.a:
            raise DomainError(f"box needs s < a, got s={self.s}, a={self.a}")

    def minkowski_norm(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        return np.maximum(x[..., 0] / self.s, np.max(x[..., 1:], axis=-1) / self.a)

    def support(self, u):
        u = np.abs(np.asarray(u, dtype=float))
        return self.s * u[..., 0] + self.a * np.sum(u[..., 1:], axis=-1)

    def volume(self):
        n = self.dim
        return exp_checked(n * math.log(2.0) + math.log(self.s) + (n - 1) * math.log(self.a), "box volume")

    def surface(self):
        # 2^n a^{n-2} (a + (n-1) s)
        n = self.dim
        log_value = n * math.log(2.0) + (n - 2) * math.log(self.a) + math.log(self.a + (n - 1) * self.s)
        return exp_checked(log_value, "box surface")

    def inradius(self):
        return float(self.s)

    def circumradius(self):
        return math.hypot(self.s, math.sqrt(self.dim - 1) * self.a)

    def scaled(self, factor):
        return Box(self.s * factor, self.a * factor, self.dim)

    def describe(self):
        return f"box:{self.s:.12g},{self.a:.12g},{self.dim}"


@dataclass(frozen=True)
class WeightedL1(BodyFamily):
    """
    P_s = {x : |x_1| + (1/s) Σ_{i≥2} |x_i| ≤ 1}, optionally dilated by `scale`.

    P_s is the image of the cross-polytope under diag(1, s, ..., s), so
    |P_s| = 2^n s^{n-1}/n!. Every facet touches the inscribed ball, which
    gives S(P_s) = n|P_s|/r(P_s).
    """

    s: float
    dim: int
    scale: float = 1.0

    def __post_init__(self):
        _check_positive(s=self.s, scale=self.scale)
        _check_dimension(self.dim, 2)

    def minkowski_norm(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        return (x[..., 0] + np.sum(x[..., 1:], axis=-1) / self.s) / self.scale

    def support(self, u):
        u = np.abs(np.asarray(u, dtype=float))
        return self.scale * np.maximum(u[..., 0], self.s * np.max(u[..., 1:], axis=-1))

    def volume(self):
        return exp_checked(self._log_volume(), "weighted l1 volume")

    def _log_volume(self):
        n = self.dim
        return n * math.log(2.0 * self.scale) + (n - 1) * math.log(self.s) - math.lgamma(n + 1)

    def surface(self):
        log_value = math.log(self.dim) + self._log_volume() - math.log(self.inradius())
        return exp_checked(log_value, "weighted l1 surface")

    def inradius(self):
        # scale / sqrt(1 + (n-1)/s²) without squaring s
        return self.scale / math.hypot(1.0, math.sqrt(self.dim - 1) / self.s)

    def circumradius(self):
        return self.scale * max(1.0, self.s)

    def scaled(self, factor):
        return WeightedL1(self.s, self.dim, self.scale * factor)

    def describe(self):
        if self.scale != 1.0:
            return f"wl1:{self.s:.12g},{self.dim}@scale={self.scale:.12g}"
        return f"wl1:{self.s:.12g},{self.dim}"


@dataclass(frozen=True)
class EllipsoidRef(BodyFamily):
    """An ellipsoid seen as a member of the body families."""

    ellipsoid: Ellipsoid

    @property
    def dim(self) -> int:
        return self.ellipsoid.dim

    def minkowski_norm(self, x):
        return self.ellipsoid.minkowski_norm(x)

    def support(self, u):
        return self.ellipsoid.support(u)

    def volume(self):
        return self.ellipsoid.volume()

    def surface(self):
        if self.dim == 2:
            return ellipse_perimeter(*self.ellipsoid.axes)
        if self.dim == 1:
            return 2.0
        return None

    def inradius(self):
        return self.ellipsoid.inradius

    def circumradius(self):
        return self.ellipsoid.circumradius

    def scaled(self, factor):
        return EllipsoidRef(self.ellipsoid.scaled(factor))

    def describe(self):
        return self.ellipsoid.describe()
