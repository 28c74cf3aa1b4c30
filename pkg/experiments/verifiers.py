"""
Verifiers: each runs one family of inequality checks and returns a
VerdictReport. A report passes when none of its checks failed beyond the
Monte-Carlo tolerance; `trials` counts the individual checks.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import CHUNK_SIZE, DEFAULT_WORKERS, TOLERANCE_SIGMAS
from bodies.families import Ball, BodyFamily, Box, Cube, EllipsoidRef, WeightedL1
from bodies.metrics import mc_metrics
from ellipsoid.ellipsoid import Ellipsoid, section
from ellipsoid.extremal import extremal_section_scan, ratio_scan
from ellipsoid.quermass import (
    avg_section_surfaceless,
    dual_affine_ball_value,
    dual_affine_quermass,
    kz_dual,
    mean_width,
    q_k,
    quermass,
    surface_area,
    surface_section_lower_constant,
)
from experiments.cube_section import cube_max_section_perimeter, cube_section_max_scan, cube_section_perimeter_3d
from experiments.records import InequalityLedger, VerdictReport
from numkit.errors import DomainError, ScanViolation
from numkit.linalg import SymMatrix, sym_eigen
from numkit.special import gaussian_norm_mean, unit_ball_volume, volume_radius
from sampling.rng import RngStream
from sampling.sphere import grassmannian_batch

logger = logging.getLogger(__name__)

INTERLACING_TOLERANCE = 1e-9
RANDOM_AXES_RANGE = (1.0, 10.0)
RANDOM_DIMENSIONS = (3, 8)


def random_ellipsoid(
    n: int,
    rng: RngStream,
    axes_range: Tuple[float, float] = RANDOM_AXES_RANGE,
    rotate: bool = True,
) -> Ellipsoid:
    """Semi-axes log-uniform in `axes_range`, frame Haar-random when `rotate`."""
    generator = rng.generator()
    low, high = axes_range
    axes = np.exp(generator.uniform(math.log(low), math.log(high), n))
    frame = grassmannian_batch(n, n, 1, generator)[0] if rotate else None
    return Ellipsoid.from_axes(axes, frame)


def random_dimension(rng: RngStream, dims: Tuple[int, int] = RANDOM_DIMENSIONS) -> int:
    low, high = dims
    return int(rng.generator().integers(low, high + 1))


def _interlacing_slack(inner: np.ndarray, outer: np.ndarray) -> float:
    """min over i of (inner_i - outer_i, outer_{n-k+i} - inner_i)."""
    k, n = inner.size, outer.size
    return float(min(np.min(inner - outer[:k]), np.min(outer[n - k:] - inner)))


def verify_interlacing(
    n: int,
    k: int,
    trials: int,
    rng: RngStream,
    tolerance: float = INTERLACING_TOLERANCE,
) -> VerdictReport:
    """
    Cauchy interlacing for compressions, checked twice per trial.

    Eigenvalues: for a random symmetric A and a Haar frame U in G_{n,k}, the
    eigenvalues μ of UᵀAU satisfy λ_i ≤ μ_i ≤ λ_{n-k+i}.

    Ellipsoids: for a random ellipsoid E and H ∈ G_{n,k}, the semi-axes b of
    E ∩ H satisfy a_i ≤ b_i ≤ a_{n-k+i}.

    Both checks allow `tolerance` relative to the largest eigenvalue or axis.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    report = VerdictReport(theorem_tag="interlacing", seeds=[rng.seed])
    ledger = InequalityLedger(report)

    for trial in range(trials):
        point = rng.derive(trial)
        generator = point.derive(0).generator()
        matrix = SymMatrix.symmetrized(generator.standard_normal((n, n)))
        frame = grassmannian_batch(n, k, 1, generator)[0]
        outer = sym_eigen(matrix).eigenvalues
        inner = sym_eigen(SymMatrix.symmetrized(frame.T @ matrix.entries @ frame)).eigenvalues
        scale = max(1.0, float(np.max(np.abs(outer))))
        ledger.record(f"eigenvalues trial {trial}", _interlacing_slack(inner, outer), tolerance * scale, scale)

        body = random_ellipsoid(n, point.derive(1))
        cut_frame = grassmannian_batch(n, k, 1, point.derive(2).generator())[0]
        cut_axes = section(body, cut_frame).axes
        scale = float(body.axes[-1])
        ledger.record(f"section axes trial {trial}", _interlacing_slack(cut_axes, body.axes), tolerance * scale, scale)

    logger.info(f"interlacing n={n} k={k}: {report.trials} checks, {report.violations} violations")
    return report


def verify_extremal_sections(
    count: int,
    trials: int,
    samples: int,
    rng: RngStream,
    codim: int = 1,
    index: int = 1,
    dims: Tuple[int, int] = RANDOM_DIMENSIONS,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """
    Extremal-section scans over a batch of random ellipsoids.

    Ellipsoid c has a dimension drawn from `dims`, semi-axes log-uniform in
    [1, 10] and a random frame; its scan compares `trials` Haar sections
    (and their projections) with the two coordinate sections.
    """
    report = VerdictReport(theorem_tag="extremal-sections", seeds=[rng.seed])
    largest_dim = 0
    for c in range(count):
        sub = rng.derive(c)
        n = random_dimension(sub.derive(0), dims)
        if not (1 <= codim <= n - 1 and 0 <= index < n - codim):
            raise DomainError(f"k={codim}, j={index} is out of range for n={n}")
        body = random_ellipsoid(n, sub.derive(1))
        scan = extremal_section_scan(
            body, codim, index, trials, samples, sub.derive(2),
            strict=False, sigmas=sigmas, chunk_size=chunk_size, workers=workers,
        )
        report.trials += 1 + 3 * scan.trials
        report.violations += scan.violations
        report.worst_margin = min(report.worst_margin, scan.worst_margin)
        if scan.violations:
            report.failures.append(f"ellipsoid {c}: {body.describe()}")
        largest_dim = max(largest_dim, n)
    report.details = {"ellipsoids": count, "largest_dim": largest_dim, "codim": codim, "index": index}
    return report


def verify_positive_bound(
    body: Ellipsoid,
    k: int,
    samples: int,
    rng: RngStream,
    trials: int = 100,
    strict: bool = False,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """
    S(E)/|E| ≤ n/(n-k)·t(E)·max_H S(E∩H)/|E∩H| over H ∈ G_{n,n-k}.

    The maximum is taken at the section by the n-k shortest axes; a scan
    of `trials` Haar subspaces confirms that none exceeds it.

    Args:
        body: The ellipsoid E (dimension n >= 3).
        k: Codimension, 1 <= k <= n-2.
        strict: Raise ScanViolation instead of only counting scan failures.

    Returns:
        VerdictReport with both sides of the inequality in `details`.
    """
    n = body.dim
    if not 1 <= k <= n - 2:
        raise DomainError(f"need 1 <= k <= n-2, got k={k}, n={n}")
    report = VerdictReport(theorem_tag="positive-bound", seeds=[rng.seed])
    ledger = InequalityLedger(report, sigmas)

    body_volume = body.volume()
    lhs = surface_area(body, samples, rng.derive(0), chunk_size, workers) / body_volume
    t = volume_radius(body_volume, n) / body.inradius
    extremal, best, violations, frame = ratio_scan(body, k, trials, samples, rng.derive(1), sigmas)
    factor = n / (n - k)
    rhs = extremal * (factor * t)
    ledger.less_equal("surface-to-volume bound", lhs, rhs)

    report.trials += trials
    if violations:
        report.violations += violations
        report.failures.append(f"{violations} sections beat the shortest-axes section")
        if strict:
            raise ScanViolation(f"{violations} sections beat the shortest-axes section ratio", frame=frame)

    report.details = {
        "lhs": lhs.mean,
        "lhs_se": lhs.stderr,
        "rhs": rhs.mean,
        "rhs_se": rhs.stderr,
        "t": t,
        "factor": factor,
        "section_ratio": extremal.mean,
        "scan_max": best,
    }
    logger.info(f"positive bound n={n} k={k}: {lhs.mean:.6g} <= {rhs.mean:.6g}")
    return report


def hyperplane_section_constant(n: int) -> float:
    """C_n = n·ω_n·d_{n-1} / ((n-1)·ω_{n-1}·d_n)."""
    return (n * unit_ball_volume(n) * gaussian_norm_mean(n - 1)) / (
        (n - 1) * unit_ball_volume(n - 1) * gaussian_norm_mean(n)
    )


def verify_prop_sec71(
    body: Ellipsoid,
    samples: int,
    rng: RngStream,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """
    Surface against the largest hyperplane-section surface, at volume one.

    After rescaling to |E| = 1 the largest section is E ∩ e_1^⊥ and

        S(E)/S(E∩e_1^⊥) ≤ √(π/2)·C_n·r(E)·(1 + 1/Σ_{i≥2} a_1²/a_i²)^{1/2}.

    Only that inequality is asserted. D = ratio·r(E)^{1/(n-1)} and
    A = S(E)^{(n-2)/(n-1)}/S(E∩e_1^⊥) are reported.
    """
    n = body.dim
    if n < 3:
        raise DomainError(f"hyperplane-section surfaces need n >= 3, got n={n}")
    report = VerdictReport(theorem_tag="ellipsoid-slicing", seeds=[rng.seed])
    ledger = InequalityLedger(report, sigmas)

    unit = body.normalized_volume(1.0)
    surface = surface_area(unit, samples, rng.derive(0), chunk_size, workers)
    cut = section(unit, unit.axis_subspace(range(1, n)))
    cut_surface = surface_area(cut, samples, rng.derive(1), chunk_size, workers)
    ratio = surface / cut_surface

    axes = unit.axes
    inradius = float(axes[0])
    weight_sum = float(np.sum((inradius / axes[1:]) ** 2))
    oracle = hyperplane_section_constant(n) * inradius * math.sqrt(1.0 + 1.0 / weight_sum)
    bound = math.sqrt(math.pi / 2.0) * oracle
    ledger.less_equal("section ratio bound", ratio, bound)

    report.details = {
        "ratio": ratio.mean,
        "ratio_se": ratio.stderr,
        "bound": bound,
        "oracle": oracle,
        "normalized_ratio": ratio.mean * inradius ** (1.0 / (n - 1)),
        "section_constant": surface.mean ** ((n - 2) / (n - 1)) / cut_surface.mean,
        "inradius": inradius,
    }
    return report


def default_body_matrix(dims: Sequence[int], count: int, rng: RngStream) -> List[BodyFamily]:
    """
    Balls, cubes, two boxes and three weighted ℓ1 balls per dimension, plus
    `count` random ellipsoids with dimensions drawn from `dims`.
    """
    bodies: List[BodyFamily] = []
    for n in dims:
        bodies.extend([
            Ball(1.0, n), Cube(1.0, n), Box(0.5, 2.0, n), Box(0.1, 3.0, n),
            WeightedL1(0.5, n), WeightedL1(2.0, n), WeightedL1(10.0, n),
        ])
    low, high = min(dims), max(dims)
    for c in range(count):
        sub = rng.derive(c)
        bodies.append(EllipsoidRef(random_ellipsoid(random_dimension(sub.derive(0), (low, high)), sub.derive(1))))
    return bodies


def verify_body_inequalities(
    bodies: Sequence[BodyFamily],
    samples: int,
    rng: RngStream,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """
    Classical inequalities between the metrics of every body:
    isoperimetric, Bonnesen, r·S ≤ n|K| ≤ R·S, r ≤ 1/M ≤ w ≤ R, Urysohn,
    the bracket n/(R·M) ≤ p ≤ n/(r·M), q ≥ n and t ≥ 1.
    """
    report = VerdictReport(theorem_tag="inequalities", seeds=[rng.seed])
    ledger = InequalityLedger(report, sigmas)
    for i, body in enumerate(bodies):
        metrics = mc_metrics(body, samples, rng.derive(i), chunk_size, workers)
        n, name = metrics.dim, metrics.body
        omega = unit_ball_volume(n)
        volume, r, big_r = metrics.volume, metrics.inradius, metrics.circumradius
        surface = metrics.estimate("surface")
        inverse_norm = 1.0 / metrics.estimate("mean_norm")
        width = metrics.estimate("mean_width")

        ledger.less_equal(f"{name} isoperimetric", n * omega ** (1.0 / n) * volume ** ((n - 1) / n), surface)
        ledger.less_equal(f"{name} Bonnesen", volume / r + (n - 1) * omega * r ** (n - 1), surface)
        ledger.less_equal(f"{name} r·S <= n|K|", surface * r, n * volume)
        ledger.less_equal(f"{name} n|K| <= R·S", n * volume, surface * big_r)
        ledger.less_equal(f"{name} r <= 1/M", r, inverse_norm)
        ledger.less_equal(f"{name} 1/M <= w", inverse_norm, width)
        ledger.less_equal(f"{name} w <= R", width, big_r)
        ledger.less_equal(f"{name} Urysohn", metrics.vrad, width)
        ledger.less_equal(f"{name} p lower bracket", inverse_norm * (n / big_r), metrics.estimate("p"))
        ledger.less_equal(f"{name} p upper bracket", metrics.estimate("p"), inverse_norm * (n / r))
        ledger.less_equal(f"{name} q >= n", float(n), metrics.estimate("q"))
        ledger.less_equal(f"{name} t >= 1", 1.0, metrics.t)
    logger.info(f"body inequalities: {len(bodies)} bodies, {report.trials} checks, {report.violations} violations")
    return report


def verify_ellipsoid_suite(
    bodies: Sequence[Ellipsoid],
    samples: int,
    rng: RngStream,
    trials: int = 20,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """
    Quermassintegral inequalities for each ellipsoid:

    - Q_1 ≥ Q_2 ≥ ... ≥ Q_n, with Q_n = vrad and Q_1 = w;
    - Φ̃_[k](E) ≤ Φ̃_[k](B_2^n) for 1 <= k <= n-1;
    - W_{n-j}(E) = (|E|/ω_n)·W_j(E°) for 1 <= j <= n-1;
    - S(E) ≥ (n·ω_n/ω_{n-1})·as(E);
    - the surface-to-volume section bound for k = 1 and k = n-2 (n >= 3),
      each with a `trials`-subspace scan.
    """
    report = VerdictReport(theorem_tag="ellipsoid-suite", seeds=[rng.seed])
    ledger = InequalityLedger(report, sigmas)
    for i, body in enumerate(bodies):
        sub = rng.derive(i)
        n, name = body.dim, body.describe()
        common = sub.derive(0)

        normalized = [q_k(body, k, samples, common, chunk_size, workers) for k in range(1, n + 1)]
        for k in range(1, n):
            ledger.less_equal(f"{name} Q_{k + 1} <= Q_{k}", normalized[k], normalized[k - 1])
        width = mean_width(body, samples, sub.derive(1), chunk_size, workers)
        vrad = volume_radius(body.volume(), n)
        for k, value in enumerate(normalized, start=1):
            ledger.less_equal(f"{name} vrad <= Q_{k}", vrad, value)
            ledger.less_equal(f"{name} Q_{k} <= w", value, width)

        for k in range(1, n):
            value = dual_affine_quermass(body, k, samples, sub.derive(2), chunk_size, workers)
            ledger.less_equal(f"{name} dual affine k={k}", value, dual_affine_ball_value(n, k))

        for j in range(1, n):
            direct = quermass(body, n - j, samples, sub.derive(3), chunk_size, workers)
            dual = kz_dual(body, j, samples, sub.derive(4), chunk_size, workers)
            ledger.equal(f"{name} polar identity j={j}", direct, dual)

        if n >= 2:
            surface = surface_area(body, samples, sub.derive(5), chunk_size, workers)
            average = avg_section_surfaceless(body, samples, sub.derive(6), chunk_size, workers)
            ledger.less_equal(f"{name} average section bound", average * surface_section_lower_constant(n), surface)

        for k in sorted({1, n - 2}):
            if n >= 3 and 1 <= k <= n - 2:
                bound = verify_positive_bound(
                    body, k, samples, sub.derive(7 + k), trials=trials,
                    sigmas=sigmas, chunk_size=chunk_size, workers=workers,
                )
                report.merge(bound)
    logger.info(f"ellipsoid suite: {len(bodies)} ellipsoids, {report.trials} checks, {report.violations} violations")
    return report


def verify_cube_section(trials: int, rng: RngStream, half_side: float = 1.0) -> VerdictReport:
    """
    Largest central-section perimeter of [-h, h]³: the scan from
    cube_section_max_scan plus the closed forms at ξ_0 and at e_3.
    """
    report = cube_section_max_scan(trials, rng, half_side)
    ledger = InequalityLedger(report)
    ledger.equal("perimeter at ξ_0", report.details["maximizer_perimeter"], cube_max_section_perimeter(half_side))
    ledger.equal("perimeter at e_3", cube_section_perimeter_3d(np.array([0.0, 0.0, 1.0]), half_side), 8.0 * half_side)
    return report


def verify_random_positive_bounds(
    count: int,
    samples: int,
    rng: RngStream,
    trials: int = 100,
    dims: Tuple[int, int] = RANDOM_DIMENSIONS,
    codim: Optional[int] = None,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> VerdictReport:
    """verify_positive_bound over `count` random ellipsoids, with k = 1 and k = n-2 unless `codim` is given."""
    if codim is not None:
        # only dimensions that admit codimension `codim`
        dims = (max(dims[0], codim + 2), dims[1])
        if codim < 1 or dims[0] > dims[1]:
            raise DomainError(f"no dimension up to {dims[1]} admits codimension k={codim}")
    report = VerdictReport(theorem_tag="positive-bound", seeds=[rng.seed])
    for c in range(count):
        sub = rng.derive(c)
        body = random_ellipsoid(random_dimension(sub.derive(0), dims), sub.derive(1))
        n = body.dim
        for k in ([codim] if codim is not None else sorted({1, n - 2})):
            report.merge(verify_positive_bound(
                body, k, samples, sub.derive(2 + k), trials=trials,
                sigmas=sigmas, chunk_size=chunk_size, workers=workers,
            ))
    return report
