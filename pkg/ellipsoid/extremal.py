"""
Extremal central sections of an ellipsoid.

For an ellipsoid with semi-axes a_1 ≤ ... ≤ a_n and every (n-k)-dimensional
subspace H,

    W_j(E ∩ F) ≤ W_j(E ∩ H) ≤ W_j(P_H E) ≤ W_j(E ∩ Ê),

where F is spanned by the n-k shortest principal directions and Ê by the
n-k longest. The scan below evaluates the two coordinate sections and a
batch of Haar subspaces with one shared sample stream and counts every
subspace that breaks the chain.
"""

import logging
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, Optional

import numpy as np

from config import CHUNK_SIZE, DEFAULT_WORKERS, TOLERANCE_SIGMAS
from ellipsoid.ellipsoid import Ellipsoid, projection, section
from ellipsoid.quermass import mean_norm, quermass
from numkit.errors import DomainError, ScanViolation
from sampling.estimator import McEstimate
from sampling.rng import RngStream
from sampling.sphere import Subspace, grassmannian_batch

logger = logging.getLogger(__name__)


@dataclass
class ScanReport:
    """Outcome of one extremal-section scan."""

    dim: int
    codim: int
    index: int
    trials: int
    seed: int
    lower: McEstimate
    upper: McEstimate
    observed_min: float
    observed_max: float
    projection_max: float
    violations: int = 0
    worst_margin: float = float("inf")
    worst_frame: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["lower"] = self.lower.to_dict()
        data["upper"] = self.upper.to_dict()
        data["worst_frame"] = None if self.worst_frame is None else self.worst_frame.tolist()
        return data


class _Chain:
    """Running check of `value <= bound` with relative tolerance."""

    def __init__(self, sigmas: float):
        self.sigmas = sigmas
        self.violations = 0
        self.worst_margin = float("inf")
        self.worst_frame = None

    def check(self, smaller: McEstimate, larger: McEstimate, frame: Optional[np.ndarray]) -> None:
        slack = larger.mean - smaller.mean
        tolerance = smaller.tolerance(self.sigmas) + larger.tolerance(self.sigmas)
        scale = max(abs(larger.mean), abs(smaller.mean), 1e-300)
        margin = slack / scale
        if margin < self.worst_margin:
            self.worst_margin = margin
            self.worst_frame = frame
        if slack < -tolerance:
            self.violations += 1
            logger.warning(f"extremal chain broken: {smaller.mean:.12g} > {larger.mean:.12g} (tolerance {tolerance:.3g})")


def coordinate_sections(body: Ellipsoid, codim: int):
    """(E ∩ F, E ∩ Ê): sections by the spans of the shortest and the longest n-k axes."""
    n = body.dim
    m = n - codim
    return section(body, body.axis_subspace(range(m))), section(body, body.axis_subspace(range(codim, n)))


def _haar_frames(n: int, m: int, trials: int, rng: RngStream) -> np.ndarray:
    generator = rng.generator()
    return grassmannian_batch(n, m, trials, generator)


def extremal_section_scan(
    body: Ellipsoid,
    codim: int,
    index: int,
    trials: int,
    samples: int,
    rng: RngStream,
    strict: bool = True,
    sigmas: float = TOLERANCE_SIGMAS,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> ScanReport:
    """
    Compare W_j of random central sections against the two coordinate sections.

    Args:
        body: The ellipsoid E in R^n.
        codim: k, the codimension of the sections (1 <= k <= n-1).
        index: j, the quermassintegral index (0 <= j < n-k).
        trials: Number of Haar subspaces H ∈ G_{n,n-k}.
        samples: Monte-Carlo samples per W_j evaluation.
        rng: Stream; subspaces come from rng.derive(1), every W_j
            evaluation reuses rng.derive(0).
        strict: Raise ScanViolation when the chain breaks instead of only
            counting.

    Returns:
        ScanReport with both bounds, the observed range over the scan and
        the largest projection value.

    Raises:
        ScanViolation: If strict and some subspace breaks the chain; the
            exception carries that subspace's frame.
    """
    n = body.dim
    if not 1 <= codim <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got k={codim}, n={n}")
    m = n - codim
    if not 0 <= index < m:
        raise DomainError(f"need 0 <= j < n-k, got j={index}, n-k={m}")

    common = rng.derive(0)

    def evaluate(piece: Ellipsoid) -> McEstimate:
        return quermass(piece, index, samples, common, chunk_size, workers)

    smallest, largest = coordinate_sections(body, codim)
    lower, upper = evaluate(smallest), evaluate(largest)
    chain = _Chain(sigmas)
    chain.check(lower, upper, None)

    observed = []
    projection_max = -np.inf
    for frame in _haar_frames(n, m, trials, rng.derive(1)):
        subspace = Subspace(frame)
        cut = evaluate(section(body, subspace))
        shadow = evaluate(projection(body, subspace))
        chain.check(lower, cut, frame)
        chain.check(cut, shadow, frame)
        chain.check(shadow, upper, frame)
        observed.append(cut.mean)
        projection_max = max(projection_max, shadow.mean)

    report = ScanReport(
        dim=n,
        codim=codim,
        index=index,
        trials=trials,
        seed=rng.seed,
        lower=lower,
        upper=upper,
        observed_min=float(min(observed)) if observed else lower.mean,
        observed_max=float(max(observed)) if observed else upper.mean,
        projection_max=float(projection_max) if observed else upper.mean,
        violations=chain.violations,
        worst_margin=chain.worst_margin,
        worst_frame=chain.worst_frame,
    )
    logger.info(
        f"extremal scan n={n} k={codim} j={index}: [{lower.mean:.6g}, {upper.mean:.6g}] "
        f"observed [{report.observed_min:.6g}, {report.observed_max:.6g}], {report.violations} violations"
    )
    if strict and report.violations:
        raise ScanViolation(
            f"{report.violations} subspaces break the extremal-section chain (n={n}, k={codim}, j={index})",
            frame=report.worst_frame,
        )
    return report


def section_ratio(piece: Ellipsoid, samples: int, rng: RngStream) -> McEstimate:
    """
    S(F)/|F| for an m-dimensional ellipsoid F, through S(F) = m·|F|·M(F).

    The ratio is nonincreasing in every semi-axis of F, so over central
    sections it is largest at the section by the shortest axes.
    """
    return mean_norm(piece, samples, rng) * piece.dim


def ratio_scan(
    body: Ellipsoid,
    codim: int,
    trials: int,
    samples: int,
    rng: RngStream,
    sigmas: float = TOLERANCE_SIGMAS,
):
    """
    Scan max_H S(E ∩ H)/|E ∩ H| over H ∈ G_{n,n-k}.

    Returns:
        (ratio at the shortest-axes section, largest sampled ratio,
        violations, worst frame).
    """
    n = body.dim
    if not 1 <= codim <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got k={codim}, n={n}")
    m = n - codim
    if m < 2:
        raise DomainError("section surface needs sections of dimension >= 2")
    common = rng.derive(0)
    smallest, _ = coordinate_sections(body, codim)
    extremal = section_ratio(smallest, samples, common)
    chain = _Chain(sigmas)
    best = extremal.mean
    for frame in _haar_frames(n, m, trials, rng.derive(1)):
        value = section_ratio(section(body, Subspace(frame)), samples, common)
        chain.check(value, extremal, frame)
        best = max(best, value.mean)
    return extremal, best, chain.violations, chain.worst_frame
