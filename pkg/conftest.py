"""
Shared pytest fixtures for the toolkit's test modules.
"""

import pytest

from config import TOLERANCE_SIGMAS, EXACT_RTOL
from sampling.estimator import McEstimate
from sampling.rng import RngStream


def assert_within(estimate, expected, sigmas: float = TOLERANCE_SIGMAS):
    """|mean - expected| <= sigmas·stderr + 1e-9·|expected| (exact numbers compare at 1e-9)."""
    if isinstance(estimate, McEstimate):
        mean, stderr = estimate.mean, estimate.stderr
    else:
        mean, stderr = float(estimate), 0.0
    if isinstance(expected, McEstimate):
        stderr = (stderr ** 2 + expected.stderr ** 2) ** 0.5
        expected = expected.mean
    bound = sigmas * stderr + EXACT_RTOL * max(abs(expected), abs(mean))
    assert abs(mean - expected) <= bound, (
        f"{mean!r} differs from {expected!r} by {abs(mean - expected):.3e} (allowed {bound:.3e})"
    )


@pytest.fixture
def rng():
    return RngStream(seed=7)


@pytest.fixture
def within():
    return assert_within
