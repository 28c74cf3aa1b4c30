"""
Bodies package: closed-form convex body families and their shape parameters.
"""

from bodies.families import BodyFamily, Ball, Cube, Box, WeightedL1, EllipsoidRef
from bodies.metrics import BodyMetrics, METRIC_FIELDS, exact_metrics, mc_metrics, gaussian_support_mean

__all__ = [
    'BodyFamily', 'Ball', 'Cube', 'Box', 'WeightedL1', 'EllipsoidRef',
    'BodyMetrics', 'METRIC_FIELDS', 'exact_metrics', 'mc_metrics',
    'gaussian_support_mean',
]
