"""
Shape parameters of the body families.

Exact entries (volume, surface, inradius, circumradius, vrad, t) come from
closed forms; the spherical averages M(K) and w(K), and everything built
from them, are Monte-Carlo estimates that carry a standard error.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from config import CHUNK_SIZE, DEFAULT_WORKERS
from bodies.families import BodyFamily, EllipsoidRef
from ellipsoid.quermass import surface_rivin
from numkit.special import volume_radius
from sampling.estimator import McEstimate, stderr_of, value_of
from sampling.rng import RngStream
from sampling.sphere import mc_gaussian_integral, mc_sphere_integral

logger = logging.getLogger(__name__)

METRIC_FIELDS = (
    "volume", "surface", "inradius", "circumradius", "mean_width",
    "mean_norm", "vrad", "t", "p", "q",
)


@dataclass
class BodyMetrics:
    """
    Metrics of one body. Entries that were not computed are None; `stderr`
    holds the standard error of every Monte-Carlo entry.
    """

    body: str
    dim: int
    volume: Optional[float] = None
    surface: Optional[float] = None
    inradius: Optional[float] = None
    circumradius: Optional[float] = None
    mean_width: Optional[float] = None
    mean_norm: Optional[float] = None
    vrad: Optional[float] = None
    t: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None
    samples: int = 2
    seed: int = 0
    stderr: Dict[str, float] = field(default_factory=dict)

    def estimate(self, name: str) -> McEstimate:
        """Entry `name` as an estimate (stderr 0 for exact entries)."""
        value = getattr(self, name)
        if value is None:
            raise KeyError(f"metric {name!r} was not computed for {self.body}")
        return McEstimate(value, self.stderr.get(name, 0.0), max(self.samples, 2), self.seed)

    def to_row(self) -> Dict[str, Any]:
        """Flat record: body, dim, seed, then every metric followed by its `_se` column."""
        row: Dict[str, Any] = {"body": self.body, "dim": self.dim, "seed": self.seed}
        for name in METRIC_FIELDS:
            row[name] = getattr(self, name)
            row[f"{name}_se"] = self.stderr.get(name, 0.0) if getattr(self, name) is not None else None
        return row


def exact_metrics(body: BodyFamily) -> BodyMetrics:
    """
    Closed-form entries of a body.

    Args:
        body: Any BodyFamily variant.

    Returns:
        BodyMetrics with volume, inradius, circumradius, vrad and t filled in,
        and the surface area whenever the family has a closed form for it.
    """
    n = body.dim
    volume = body.volume()
    inradius = body.inradius()
    return BodyMetrics(
        body=body.describe(),
        dim=n,
        volume=volume,
        surface=body.surface(),
        inradius=inradius,
        circumradius=body.circumradius(),
        vrad=volume_radius(volume, n),
        t=volume_radius(volume, n) / inradius,
    )


def mc_metrics(
    body: BodyFamily,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> BodyMetrics:
    """
    All metrics of a body, with M(K), w(K) and (for ellipsoids) S(K) estimated.

    M and w are drawn from independent child streams, so p = S/(|K|·M) and
    q = w·S/|K| propagate their errors as ratios of independent estimates.
    """
    metrics = exact_metrics(body)
    n = body.dim
    mean_norm = mc_sphere_integral(body.minkowski_norm, n, samples, rng.derive(0), chunk_size, workers)
    mean_width = mc_sphere_integral(body.support, n, samples, rng.derive(1), chunk_size, workers)

    surface = metrics.surface
    if surface is None and isinstance(body, EllipsoidRef):
        surface = surface_rivin(body.ellipsoid, samples, rng.derive(2), chunk_size, workers)

    volume = metrics.volume
    p = (surface / volume) * (1.0 / mean_norm)
    q = mean_width * (surface / volume)

    metrics.samples = samples
    metrics.seed = rng.seed
    for name, value in (("surface", surface), ("mean_norm", mean_norm), ("mean_width", mean_width), ("p", p), ("q", q)):
        setattr(metrics, name, value_of(value))
        if isinstance(value, McEstimate):
            metrics.stderr[name] = stderr_of(value)
    logger.debug(f"metrics for {metrics.body}: p={metrics.p:.6g}, q={metrics.q:.6g}")
    return metrics


def gaussian_support_mean(
    body: BodyFamily,
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """E h_K(G) for a standard Gaussian G; equals d_n·w(K)."""
    return mc_gaussian_integral(body.support, body.dim, samples, rng, chunk_size, workers)
