"""
Sampling package: reproducible streams, Monte-Carlo estimates, sphere and
Grassmannian samplers.
"""

from sampling.rng import RngStream
from sampling.estimator import McEstimate, chunked_estimate, value_of, stderr_of
from sampling.sphere import (
    Subspace,
    gaussian_batch,
    sphere_batch,
    grassmannian_batch,
    sample_sphere,
    sample_grassmannian,
    mc_sphere_integral,
    mc_gaussian_integral,
    mc_grassmann_average,
    sphere_scan,
)

__all__ = [
    'RngStream', 'McEstimate', 'chunked_estimate', 'value_of', 'stderr_of',
    'Subspace', 'gaussian_batch', 'sphere_batch', 'grassmannian_batch',
    'sample_sphere', 'sample_grassmannian', 'mc_sphere_integral',
    'mc_gaussian_integral', 'mc_grassmann_average', 'sphere_scan',
]
