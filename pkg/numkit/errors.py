"""
Exception hierarchy shared by every module of the toolkit.

Each class carries the exit code the CLI reports for it: 1 when an
inequality check found a violation, 2 for usage and domain errors, 3 for
numerical failures.
"""

from typing import Optional

import numpy as np


class GeometryError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class DomainError(GeometryError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class ParseError(GeometryError, ValueError):
    """A textual body description is malformed."""

    exit_code = 2

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonConvergence(GeometryError):
    """The eigensolver exhausted its sweep budget."""


class RankDeficient(GeometryError):
    """Columns handed to orthonormalization are (numerically) dependent."""


class DegenerateSample(GeometryError):
    """A raw Gaussian draw stayed degenerate after the resample budget."""


class NonFiniteValue(GeometryError):
    """An integrand returned NaN or an infinite value."""


class DegeneratePolygon(GeometryError):
    """A plane section produced fewer than three vertices."""


class ScanViolation(GeometryError):
    """A sampled subspace beat the analytically predicted extremizer."""

    exit_code = 1

    def __init__(self, message: str, frame: Optional[np.ndarray] = None):
        super().__init__(message)
        self.frame = None if frame is None else np.array(frame, copy=True)
