"""
Tests for the body families and their metrics.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bodies.families import Ball, Box, Cube, EllipsoidRef, WeightedL1
from bodies.metrics import exact_metrics, gaussian_support_mean, mc_metrics
from ellipsoid.ellipsoid import Ellipsoid
from numkit.errors import DomainError
from numkit.special import gaussian_norm_mean, unit_ball_volume
from sampling.rng import RngStream
from sampling.sphere import mc_sphere_integral


class TestExactMetrics:
    def test_cube(self):
        metrics = exact_metrics(Cube(1.0, 3))
        assert metrics.volume == pytest.approx(8.0, rel=1e-14)
        assert metrics.surface == pytest.approx(24.0, rel=1e-14)
        assert metrics.inradius == 1.0
        assert metrics.circumradius == pytest.approx(math.sqrt(3.0), rel=1e-15)

    def test_box(self):
        metrics = exact_metrics(Box(1.0, 2.0, 3))
        assert metrics.volume == pytest.approx(32.0, rel=1e-14)
        assert metrics.surface == pytest.approx(64.0, rel=1e-14)
        assert metrics.inradius == 1.0

    def test_weighted_l1(self):
        metrics = exact_metrics(WeightedL1(2.0, 3))
        assert metrics.inradius == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-14)
        assert metrics.volume == pytest.approx(16.0 / 3.0, rel=1e-14)
        assert metrics.surface == pytest.approx(3.0 * (16.0 / 3.0) / math.sqrt(2.0 / 3.0), rel=1e-14)

    def test_weighted_l1_volume_hit_or_miss(self):
        body = WeightedL1(2.0, 3)
        generator = np.random.default_rng(17)
        points = generator.uniform(-1.0, 1.0, (2_000_000, 3)) * np.array([1.0, 2.0, 2.0])
        inside = body.minkowski_norm(points) <= 1.0
        box_volume = 2.0 * 4.0 * 4.0
        estimate = box_volume * inside.mean()
        stderr = box_volume * inside.std() / math.sqrt(len(inside))
        assert abs(estimate - 16.0 / 3.0) <= 4.0 * stderr

    def test_ball_t_is_one(self):
        assert exact_metrics(Ball(2.0, 5)).t == pytest.approx(1.0, rel=1e-14)

    def test_ellipsoid_surface_left_to_monte_carlo(self):
        assert exact_metrics(EllipsoidRef(Ellipsoid.from_axes([1.0, 2.0, 3.0]))).surface is None


class TestValidation:
    def test_box_requires_s_below_a(self):
        with pytest.raises(DomainError):
            Box(2.0, 1.0, 3)

    @pytest.mark.parametrize("make", [
        lambda: Ball(0.0, 3),
        lambda: Cube(-1.0, 3),
        lambda: WeightedL1(float("inf"), 3),
        lambda: Ball(1.0, 0),
        lambda: Box(1.0, 2.0, 1),
    ])
    def test_rejects_bad_parameters(self, make):
        with pytest.raises(DomainError):
            make()

    @pytest.mark.parametrize("body", [
        WeightedL1(1e200, 3),
        Ball(1e200, 3),
        Cube(1e-200, 4),
        Box(1.0, 1e200, 3),
    ])
    def test_unrepresentable_volume_is_a_domain_error(self, body):
        with pytest.raises(DomainError, match="double range"):
            body.volume()

    def test_huge_weight_keeps_finite_radii(self):
        body = WeightedL1(1e200, 3)
        assert math.isfinite(body.inradius()) and body.inradius() > 0.0
        assert math.isfinite(body.circumradius())


class TestGauges:
    def test_cube_norm(self):
        assert Cube(1.0, 3).minkowski_norm(np.array([0.5, -1.0, 0.25])) == 1.0

    def test_weighted_l1_vertex(self):
        assert WeightedL1(7.0, 4).minkowski_norm(np.array([1.0, 0.0, 0.0, 0.0])) == 1.0

    def test_ball_norm(self):
        assert Ball(2.0, 3).minkowski_norm(np.array([3.0, 4.0, 0.0])) == pytest.approx(2.5)

    def test_supports(self):
        u = np.array([0.6, -0.8, 0.0])
        assert Cube(1.0, 3).support(u) == pytest.approx(1.4)
        assert Box(0.5, 3.0, 3).support(np.array([1.0, 0.0, 0.0])) == 0.5
        assert Ball(2.0, 3).support(u) == pytest.approx(2.0)

    @given(st.sampled_from([Cube(1.5, 4), Box(0.5, 2.0, 4), WeightedL1(3.0, 4), Ball(2.0, 4)]),
           st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_norm_support_duality(self, body, seed):
        generator = np.random.default_rng(seed)
        x = generator.standard_normal(4)
        u = generator.standard_normal((2000, 4))
        # ⟨x, u⟩ <= ‖x‖_K · h_K(u) for every pair
        assert np.all(u @ x <= body.minkowski_norm(x) * body.support(u) * (1.0 + 1e-12) + 1e-12)

    @given(st.floats(min_value=0.1, max_value=10.0))
    def test_norm_homogeneity(self, factor):
        x = np.array([0.3, -0.7, 1.1])
        body = WeightedL1(2.0, 3)
        assert body.minkowski_norm(factor * x) == pytest.approx(factor * body.minkowski_norm(x), rel=1e-12)

    def test_origin(self):
        assert Box(1.0, 2.0, 3).minkowski_norm(np.zeros(3)) == 0.0


class TestMonteCarloMetrics:
    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_ball(self, rng, n):
        metrics = mc_metrics(Ball(1.0, n), 10_000, rng)
        assert metrics.mean_norm == pytest.approx(1.0, rel=1e-12)
        assert metrics.mean_width == pytest.approx(1.0, rel=1e-12)
        assert metrics.p == pytest.approx(n, rel=1e-12)
        assert metrics.q == pytest.approx(n, rel=1e-12)
        assert metrics.t == pytest.approx(1.0, rel=1e-12)

    def test_cube_p_bracket(self, rng):
        n = 16
        metrics = mc_metrics(Cube(1.0, n), 200_000, rng)
        ratio = metrics.p / (n ** 1.5 / math.sqrt(math.log(n)))
        assert 0.3 <= ratio <= 3.0

    def test_weighted_l1_closed_form_p(self, rng, within):
        body = WeightedL1(1e3, 8)
        metrics = mc_metrics(body, 200_000, rng)
        closed = 8.0 / (metrics.inradius * metrics.estimate("mean_norm"))
        within(metrics.estimate("p"), closed.mean)

    def test_ellipsoid_surface_is_estimated(self, rng):
        metrics = mc_metrics(EllipsoidRef(Ellipsoid.from_axes([1.0, 2.0, 3.0])), 20_000, rng)
        assert metrics.surface > 0.0
        assert metrics.stderr["surface"] > 0.0

    def test_scale_invariance(self, rng, within):
        body = Box(0.5, 2.0, 4)
        base = mc_metrics(body, 50_000, rng)
        scaled = mc_metrics(body.scaled(2.0), 50_000, rng)
        assert scaled.p == pytest.approx(base.p, rel=1e-12)
        assert scaled.q == pytest.approx(base.q, rel=1e-12)

    def test_row_has_stderr_columns(self, rng):
        row = mc_metrics(Cube(1.0, 3), 5_000, rng).to_row()
        assert row["volume_se"] == 0.0
        assert row["mean_norm_se"] > 0.0
        assert list(row)[:5] == ["body", "dim", "seed", "volume", "volume_se"]
        assert row["seed"] == rng.seed


@pytest.mark.parametrize("body", [Cube(1.0, 4), Box(0.5, 2.0, 4), WeightedL1(3.0, 4), Ball(2.0, 4)])
def test_gaussian_factorization(body, within):
    gaussian = gaussian_support_mean(body, 300_000, RngStream(21))
    spherical = mc_sphere_integral(body.support, 4, 300_000, RngStream(22)) * gaussian_norm_mean(4)
    within(gaussian, spherical)


@pytest.mark.parametrize("body", [
    Ball(1.5, 5), Cube(1.0, 4), Box(0.2, 3.0, 5), Box(1.0, 1.5, 3), WeightedL1(0.5, 4), WeightedL1(10.0, 6),
])
def test_exact_inequalities(body):
    m = exact_metrics(body)
    n = m.dim
    omega = unit_ball_volume(n)
    assert m.surface >= n * omega ** (1.0 / n) * m.volume ** ((n - 1) / n) * (1.0 - 1e-12)
    assert m.inradius * m.surface <= n * m.volume * (1.0 + 1e-12)
    assert n * m.volume <= m.circumradius * m.surface * (1.0 + 1e-12)
    assert m.surface >= (m.volume / m.inradius + (n - 1) * omega * m.inradius ** (n - 1)) * (1.0 - 1e-12)
    assert m.t >= 1.0 - 1e-12
