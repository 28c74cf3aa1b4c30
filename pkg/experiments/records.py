"""
Result records emitted by sweeps and verifiers.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

from config import EXACT_RTOL, TOLERANCE_SIGMAS
from numkit.errors import DomainError
from sampling.estimator import McEstimate, stderr_of, value_of

logger = logging.getLogger(__name__)

Value = Union[McEstimate, float]


@dataclass
class SweepRecord:
    """One point of a parameter sweep."""

    sweep_name: str
    parameter: float
    inputs: str
    values: Dict[str, float] = field(default_factory=dict)
    stderr: Dict[str, float] = field(default_factory=dict)
    ratio: float = float("nan")
    ratio_se: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.ratio) and self.ratio > 0.0):
            raise DomainError(f"sweep ratio must be finite and positive, got {self.ratio}")
        if self.ratio_se < 0.0 or any(se < 0.0 for se in self.stderr.values()):
            raise DomainError("standard errors must be nonnegative")

    @classmethod
    def build(
        cls, sweep_name: str, parameter: float, inputs: str, ratio: Value, *, seed: int = 0, **values: Value,
    ) -> "SweepRecord":
        return cls(
            sweep_name=sweep_name,
            parameter=float(parameter),
            inputs=inputs,
            values={name: value_of(v) for name, v in values.items()},
            stderr={name: stderr_of(v) for name, v in values.items()},
            ratio=value_of(ratio),
            ratio_se=stderr_of(ratio),
            seed=seed,
        )

    def estimate(self) -> McEstimate:
        return McEstimate(self.ratio, self.ratio_se, 2, self.seed)

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "sweep_name": self.sweep_name,
            "parameter": self.parameter,
            "inputs": self.inputs,
            "seed": self.seed,
            "ratio": self.ratio,
            "ratio_se": self.ratio_se,
        }
        for name, value in self.values.items():
            row[name] = value
            row[f"{name}_se"] = self.stderr.get(name, 0.0)
        return row


@dataclass
class VerdictReport:
    """
    Outcome of a verifier: how many checks ran, how many failed, and the
    tightest relative slack seen (negative once a check fails).
    """

    theorem_tag: str
    trials: int = 0
    violations: int = 0
    worst_margin: float = float("inf")
    seeds: List[int] = field(default_factory=list)
    details: Dict[str, float] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def merge(self, other: "VerdictReport") -> "VerdictReport":
        """Fold another report's counts into this one."""
        self.trials += other.trials
        self.violations += other.violations
        self.worst_margin = min(self.worst_margin, other.worst_margin)
        self.seeds.extend(seed for seed in other.seeds if seed not in self.seeds)
        self.failures.extend(other.failures)
        return self

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "theorem_tag": self.theorem_tag,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
            "seeds": " ".join(str(seed) for seed in self.seeds),
        }
        row.update(self.details)
        return row


class InequalityLedger:
    """
    Collects `lhs <= rhs` checks into a VerdictReport.

    A check fails when lhs - rhs exceeds sigmas times the combined standard
    error plus a 1e-9 relative slack (and an optional absolute slack for
    quantities that can sit at zero). The recorded margin of each check is
    (rhs - lhs)/|rhs|.
    """

    def __init__(self, report: VerdictReport, sigmas: float = TOLERANCE_SIGMAS):
        self.report = report
        self.sigmas = sigmas

    def tolerance(self, lhs: Value, rhs: Value, absolute: float = 0.0) -> float:
        combined = math.hypot(stderr_of(lhs), stderr_of(rhs))
        relative = EXACT_RTOL * max(abs(value_of(lhs)), abs(value_of(rhs)))
        return self.sigmas * combined + relative + absolute

    def record(self, label: str, slack: float, tolerance: float, scale: float) -> bool:
        """Record one check with a precomputed slack (negative when violated)."""
        self.report.trials += 1
        margin = slack / scale if scale > 0.0 else slack
        self.report.worst_margin = min(self.report.worst_margin, margin)
        if slack < -tolerance:
            self.report.violations += 1
            self.report.failures.append(label)
            logger.warning(f"{self.report.theorem_tag}: {label} violated by {-slack:.6g} (tolerance {tolerance:.3g})")
            return False
        return True

    def less_equal(self, label: str, lhs: Value, rhs: Value, absolute: float = 0.0) -> bool:
        slack = value_of(rhs) - value_of(lhs)
        return self.record(label, slack, self.tolerance(lhs, rhs, absolute), abs(value_of(rhs)))

    def equal(self, label: str, lhs: Value, rhs: Value) -> bool:
        slack = -abs(value_of(rhs) - value_of(lhs))
        return self.record(label, slack, self.tolerance(lhs, rhs), abs(value_of(rhs)))
