"""
Numerical kit: dimensional constants, symmetric eigensolver, orthonormalization.
"""

from numkit.errors import (
    GeometryError,
    DomainError,
    ParseError,
    NonConvergence,
    RankDeficient,
    DegenerateSample,
    NonFiniteValue,
    DegeneratePolygon,
    ScanViolation,
)
from numkit.special import (
    unit_ball_volume,
    log_unit_ball_volume,
    exp_checked,
    unit_sphere_area,
    gaussian_norm_mean,
    volume_radius,
)
from numkit.linalg import (
    SymMatrix,
    EigenDecomposition,
    sym_eigen,
    orthonormalize,
    orthonormalize_batch,
    orthonormality_residual,
)

__all__ = [
    'GeometryError', 'DomainError', 'ParseError', 'NonConvergence', 'RankDeficient',
    'DegenerateSample', 'NonFiniteValue', 'DegeneratePolygon', 'ScanViolation',
    'unit_ball_volume', 'log_unit_ball_volume', 'exp_checked', 'unit_sphere_area',
    'gaussian_norm_mean', 'volume_radius',
    'SymMatrix', 'EigenDecomposition', 'sym_eigen', 'orthonormalize',
    'orthonormalize_batch', 'orthonormality_residual',
]
