"""
Divergence and limit sweeps.

Each sweep walks a one-parameter family of bodies and records, per point,
the ratio whose behaviour is under study together with the functionals it
was built from. Point i draws from rng.derive(i), so a point's numbers do
not depend on which other points are in the grid.
"""

import logging
import math
from typing import List, Sequence

from config import CHUNK_SIZE, CONDITIONING_CAP, DEFAULT_WORKERS
from bodies.families import Box, WeightedL1
from bodies.metrics import mc_metrics
from ellipsoid.ellipsoid import Ellipsoid, RevolutionEllipsoid, section
from ellipsoid.quermass import mean_width, quermass_revolution, surface_area, surface_rivin
from experiments.records import SweepRecord
from numkit.errors import DomainError
from numkit.special import unit_ball_volume
from sampling.rng import RngStream

logger = logging.getLogger(__name__)

SWEEP_FAMILIES = ("wl1", "box")


def _check_grid(values: Sequence[float], ascending: bool, name: str) -> List[float]:
    grid = [float(v) for v in values]
    if not grid:
        raise DomainError(f"{name} grid is empty")
    sign = 1.0 if ascending else -1.0
    if any(sign * (b - a) <= 0.0 for a, b in zip(grid, grid[1:])):
        order = "ascending" if ascending else "descending"
        raise DomainError(f"{name} values must be strictly {order}, got {grid}")
    return grid


def _check_conditioning(ratio: float, label: str) -> None:
    if not ratio <= CONDITIONING_CAP:
        raise DomainError(f"{label}: axis ratio {ratio:.3e} exceeds the conditioning cap {CONDITIONING_CAP:.0e}")


def surface_slicing_oracle(n: int, r: float) -> float:
    """(1/r^{2n-2} + r²/(n-1))^{1/2}, the growth factor the ratio is bounded below by."""
    return math.sqrt(r ** (-(2 * n - 2)) + r * r / (n - 1))


def sweep_surface_slicing(
    n: int,
    r_values: Sequence[float],
    samples: int,
    rng: RngStream,
    scale: float = 1.0,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> List[SweepRecord]:
    """
    S(E)/(|E|^{1/n}·max_ξ S(E∩ξ^⊥)) along E_r with semi-axes
    (r^{-(n-1)}, r, ..., r).

    The largest hyperplane section is E∩e_1^⊥, an (n-1)-ball of radius r;
    both surfaces go through Rivin's formula.

    Args:
        n: Dimension (n >= 3).
        r_values: Strictly ascending grid with r >= 1 (r = 1 is the ball).
        samples: Sphere points per surface estimate.
        rng: Sweep stream; point i uses rng.derive(i).
        scale: Dilation applied to every body (the ratio ignores it).

    Returns:
        One SweepRecord per r.
    """
    if n < 3:
        raise DomainError(f"surface slicing needs n >= 3, got n={n}")
    grid = _check_grid(r_values, ascending=True, name="r")
    if grid[0] < 1.0:
        raise DomainError(f"r values must be >= 1, got {grid[0]}")

    records = []
    for index, r in enumerate(grid):
        _check_conditioning(r ** n, f"r={r}")
        point = rng.derive(index)
        body = Ellipsoid.from_axes([r ** (-(n - 1))] + [r] * (n - 1)).scaled(scale)
        # The shortest axis sits in column 0 for every r >= 1
        cut = section(body, body.axis_subspace(range(1, n)))
        surface = surface_rivin(body, samples, point.derive(0), chunk_size, workers)
        cut_surface = surface_rivin(cut, samples, point.derive(1), chunk_size, workers)
        body_volume = body.volume()
        ratio = surface / (cut_surface * body_volume ** (1.0 / n))
        records.append(SweepRecord.build(
            "surface-slicing", r, body.describe(), ratio, seed=rng.seed,
            surface=surface, section_surface=cut_surface, volume=body_volume,
            oracle=surface_slicing_oracle(n, r),
        ))
        logger.info(f"surface-slicing n={n} r={r:g}: ratio {ratio.mean:.6g} ± {ratio.stderr:.2g}")
    return records


def quermass_slicing_oracle(n: int, k: int, j: int, r: float) -> float:
    """r^k((n-j)/n·r^{-2n} + j/n)^{1/2}."""
    return r ** k * math.sqrt((n - j) / n * r ** (-2 * n) + j / n)


def sweep_quermass_slicing(
    n: int,
    k: int,
    j: int,
    r_values: Sequence[float],
    samples: int,
    rng: RngStream,
    scale: float = 1.0,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> List[SweepRecord]:
    """
    W_j(E)/(|E|^{k/n}·W_j(E∩F)) along the bodies of revolution E_{r,s},
    s = r^{-(n-1)}, where F is spanned by n-k of the equal axes.

    E∩F is an (n-k)-ball of radius r, so its W_j = ω_{n-k} r^{n-k-j}
    is exact and only W_j(E) is estimated.

    Args:
        n: Dimension.
        k: Codimension of the sections, 1 <= k <= n-2.
        j: Quermassintegral index, 0 <= j <= n-k-1.
        r_values: Strictly ascending grid with r >= 1.

    Returns:
        One SweepRecord per r.
    """
    if not 1 <= k <= n - 2:
        raise DomainError(f"need 1 <= k <= n-2, got k={k}, n={n}")
    if not 0 <= j <= n - k - 1:
        raise DomainError(f"need 0 <= j <= n-k-1, got j={j}, n-k={n - k}")
    grid = _check_grid(r_values, ascending=True, name="r")
    if grid[0] < 1.0:
        raise DomainError(f"r values must be >= 1, got {grid[0]}")

    m = n - k
    records = []
    for index, r in enumerate(grid):
        _check_conditioning(r ** n, f"r={r}")
        radius = scale * r
        body = RevolutionEllipsoid(n, radius, scale * r ** (-(n - 1)))
        value = quermass_revolution(body, j, samples, rng.derive(index), chunk_size, workers)
        body_volume = body.volume()
        cut_value = unit_ball_volume(m) * radius ** (m - j)
        ratio = value / (body_volume ** (k / n) * cut_value)
        records.append(SweepRecord.build(
            "quermass-slicing", r, body.to_ellipsoid().describe(), ratio, seed=rng.seed,
            quermass=value, section_quermass=cut_value, volume=body_volume,
            oracle=quermass_slicing_oracle(n, k, j, r),
        ))
        logger.info(f"quermass-slicing n={n} k={k} j={j} r={r:g}: ratio {ratio.mean:.6g} ± {ratio.stderr:.2g}")
    return records


def sweep_q_unbounded(
    n: int,
    a_values: Sequence[float],
    samples: int,
    rng: RngStream,
    scale: float = 1.0,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> List[SweepRecord]:
    """
    q(E) = w(E)·S(E)/|E| along the needles with semi-axes
    (a, ..., a, a^{-(n-1)}), a decreasing from at most 1.

    Returns:
        One SweepRecord per a; the ratio column is q(E) and `oracle` holds a^{-n}.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got n={n}")
    grid = _check_grid(a_values, ascending=False, name="a")
    if not (grid[0] <= 1.0 and grid[-1] > 0.0):
        raise DomainError(f"a values must lie in (0, 1], got {grid}")

    records = []
    for index, a in enumerate(grid):
        _check_conditioning(a ** (-n), f"a={a}")
        point = rng.derive(index)
        body = Ellipsoid.from_axes([a] * (n - 1) + [a ** (-(n - 1))]).scaled(scale)
        width = mean_width(body, samples, point.derive(0), chunk_size, workers)
        surface = surface_area(body, samples, point.derive(1), chunk_size, workers)
        body_volume = body.volume()
        q = width * (surface / body_volume)
        records.append(SweepRecord.build(
            "q-unbounded", a, body.describe(), q, seed=rng.seed,
            mean_width=width, surface=surface, volume=body_volume, oracle=a ** (-n),
        ))
        logger.info(f"q-unbounded n={n} a={a:g}: q {q.mean:.6g} ± {q.stderr:.2g}")
    return records


def weighted_l1_factor(n: int, s: float) -> float:
    """√(1+(n-1)/s²)/(1+(n-1)/s); p(P_s)/n^{3/2} behaves like this factor."""
    return math.sqrt(1.0 + (n - 1) / s ** 2) / (1.0 + (n - 1) / s)


def sweep_p_limits(
    n: int,
    family: str,
    values: Sequence[float],
    samples: int,
    rng: RngStream,
    s: float = 1.0,
    scale: float = 1.0,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> List[SweepRecord]:
    """
    p(K) = S(K)/(|K|·M(K)) along one of the witness families.

    family="wl1": P_s for each s in `values`; the ratio column is
    p(P_s)/n^{3/2}, reported next to the closed-form factor
    √(1+(n-1)/s²)/(1+(n-1)/s) and the semi-closed form n/(r·M).

    family="box": P_{a,s} with fixed s for each a in `values`; the ratio
    column is p(P_{a,s}), reported next to S·r/|K| and its exact value
    1 + (n-1)s/a.

    Args:
        n: Dimension (n >= 2).
        family: "wl1" or "box".
        values: Strictly ascending grid of s (wl1) or a (box).
        s: Short half-side of the boxes.

    Returns:
        One SweepRecord per grid value.
    """
    if family not in SWEEP_FAMILIES:
        raise DomainError(f"unknown p-limit family {family!r}, expected one of {SWEEP_FAMILIES}")
    grid = _check_grid(values, ascending=True, name="s" if family == "wl1" else "a")

    records = []
    for index, value in enumerate(grid):
        if family == "wl1":
            body = WeightedL1(value, n).scaled(scale)
        else:
            body = Box(s, value, n).scaled(scale)
        metrics = mc_metrics(body, samples, rng.derive(index), chunk_size, workers)
        p = metrics.estimate("p")
        mean_norm = metrics.estimate("mean_norm")
        if family == "wl1":
            records.append(SweepRecord.build(
                "p-limits", value, body.describe(), p / n ** 1.5, seed=rng.seed,
                p=p, mean_norm=mean_norm, inradius=metrics.inradius,
                factor=weighted_l1_factor(n, value),
                semi_closed=n / (metrics.inradius * mean_norm),
            ))
        else:
            records.append(SweepRecord.build(
                "p-limits", value, body.describe(), p, seed=rng.seed,
                mean_norm=mean_norm,
                surface_inradius=metrics.surface * metrics.inradius / metrics.volume,
                surface_inradius_limit=1.0 + (n - 1) * s / value,
                p_over_sqrt_n=p / math.sqrt(n),
            ))
        logger.info(f"p-limits {family} n={n} value={value:g}: p {p.mean:.6g} ± {p.stderr:.2g}")
    return records
