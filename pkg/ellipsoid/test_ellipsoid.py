"""
Tests for ellipsoid construction, sections, projections and polars.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ellipsoid.ellipsoid import Ellipsoid, RevolutionEllipsoid, ellipse_perimeter, projection, section, volume
from numkit.errors import DomainError
from numkit.special import unit_ball_volume
from sampling.sphere import Subspace


def random_ellipsoid(n: int, seed: int) -> Ellipsoid:
    generator = np.random.default_rng(seed)
    axes = np.exp(generator.uniform(0.0, math.log(10.0), n))
    frame, _ = np.linalg.qr(generator.standard_normal((n, n)))
    return Ellipsoid.from_axes(axes, frame)


def random_subspace(n: int, k: int, seed: int) -> Subspace:
    frame, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((n, k)))
    return Subspace(frame)


class TestConstruction:
    def test_axes_sorted_with_frame(self):
        body = Ellipsoid.from_axes([3.0, 1.0, 2.0])
        assert body.axes.tolist() == [1.0, 2.0, 3.0]
        assert np.array_equal(body.frame, np.eye(3)[:, [1, 2, 0]])

    def test_rejects_nonpositive_axis(self):
        with pytest.raises(DomainError):
            Ellipsoid.from_axes([1.0, 0.0, 2.0])

    def test_rejects_unsorted_direct_construction(self):
        with pytest.raises(DomainError):
            Ellipsoid(np.array([2.0, 1.0]))

    def test_conditioning_cap(self):
        with pytest.raises(DomainError):
            Ellipsoid.from_axes([1.0, 1e9])

    def test_from_matrix_round_trip(self):
        body = random_ellipsoid(5, 1)
        rebuilt = Ellipsoid.from_matrix(body.shape_matrix())
        assert np.allclose(rebuilt.axes, body.axes, rtol=1e-10)

    def test_in_and_circumradius(self):
        body = Ellipsoid.from_axes([2.0, 0.5, 7.0])
        assert body.inradius == 0.5
        assert body.circumradius == 7.0


class TestVolume:
    def test_unit_ball(self):
        assert volume(Ellipsoid.ball(3)) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)

    def test_axes_123(self):
        assert volume(Ellipsoid.from_axes([1.0, 2.0, 3.0])) == pytest.approx(8.0 * math.pi, rel=1e-14)

    def test_unit_product(self):
        assert volume(Ellipsoid.from_axes([0.5, 1.0, 2.0, 1.0])) == pytest.approx(unit_ball_volume(4), rel=1e-14)

    @given(st.floats(min_value=0.1, max_value=10.0))
    def test_homogeneity(self, factor):
        body = Ellipsoid.from_axes([1.0, 2.0, 3.0])
        assert volume(body.scaled(factor)) == pytest.approx(factor ** 3 * volume(body), rel=1e-12)

    def test_normalized_volume(self):
        assert Ellipsoid.from_axes([1.0, 1.0, 8.0]).normalized_volume().volume() == pytest.approx(1.0, rel=1e-12)

    def test_revolution_matches_ellipsoid(self):
        body = RevolutionEllipsoid(4, 3.0, 1.0)
        assert body.volume() == pytest.approx(volume(body.to_ellipsoid()), rel=1e-14)
        assert body.to_ellipsoid().axes.tolist() == [1.0, 3.0, 3.0, 3.0]


class TestSection:
    def test_axis_aligned(self):
        cut = section(Ellipsoid.from_axes([1.0, 2.0, 3.0]), Subspace.coordinate(3, [0, 1]))
        assert np.allclose(cut.axes, [1.0, 2.0], rtol=1e-12)
        assert cut.dim == 2
        assert cut.embedding.shape == (3, 2)

    def test_diagonal_line(self):
        cut = section(Ellipsoid.from_axes([1.0, 2.0]), Subspace.spanned_by([[1.0, 1.0]]))
        assert cut.axes[0] == pytest.approx(math.sqrt(8.0 / 5.0), rel=1e-12)

    def test_boundary_point(self):
        body = random_ellipsoid(4, 2)
        subspace = random_subspace(4, 2, 3)
        cut = section(body, subspace)
        tip = cut.embedding @ (cut.frame[:, 0] * cut.axes[0])
        assert body.minkowski_norm(tip) == pytest.approx(1.0, rel=1e-10)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_interlacing(self, seed):
        body = random_ellipsoid(6, seed)
        cut = section(body, random_subspace(6, 3, seed + 1))
        for j in range(3):
            assert body.axes[j] <= cut.axes[j] + 1e-9
            assert cut.axes[j] <= body.axes[3 + j] + 1e-9

    def test_rejects_wrong_ambient_dimension(self):
        with pytest.raises(DomainError):
            section(Ellipsoid.ball(3), Subspace.coordinate(4, [0]))


class TestProjection:
    def test_axis_aligned(self):
        shadow = projection(Ellipsoid.from_axes([1.0, 2.0, 3.0]), Subspace.coordinate(3, [0, 2]))
        assert np.allclose(shadow.axes, [1.0, 3.0], rtol=1e-12)

    def test_diagonal_line(self):
        shadow = projection(Ellipsoid.from_axes([1.0, 2.0]), Subspace.spanned_by([[1.0, 1.0]]))
        assert shadow.axes[0] == pytest.approx(math.sqrt(2.5), rel=1e-12)

    def test_support_oracle(self):
        body = Ellipsoid.from_axes([1.0, 2.0])
        u = np.array([1.0, 1.0]) / math.sqrt(2.0)
        t = np.linspace(0.0, 2.0 * math.pi, 200_001)
        boundary = np.stack([np.cos(t), 2.0 * np.sin(t)], axis=1)
        assert float(body.support(u)) == pytest.approx(float(np.max(boundary @ u)), rel=1e-8)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_section_inside_projection(self, seed):
        body = random_ellipsoid(5, seed)
        subspace = random_subspace(5, 2, seed + 1)
        assert np.all(section(body, subspace).axes <= projection(body, subspace).axes + 1e-9)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_duality_with_polar_section(self, seed):
        body = random_ellipsoid(5, seed)
        subspace = random_subspace(5, 3, seed + 1)
        shadow = projection(body, subspace)
        polar_cut = section(body.polar(), subspace)
        assert np.allclose(shadow.axes, 1.0 / polar_cut.axes[::-1], rtol=1e-9)


class TestPolar:
    def test_reciprocal_axes(self):
        polar = Ellipsoid.from_axes([1.0, 2.0, 4.0]).polar()
        assert polar.axes.tolist() == [0.25, 0.5, 1.0]
        assert np.array_equal(polar.frame[:, 0], [0.0, 0.0, 1.0])

    def test_involution(self):
        body = random_ellipsoid(4, 5)
        twice = body.polar().polar()
        assert np.allclose(twice.axes, body.axes, rtol=1e-14)
        assert np.array_equal(twice.frame, body.frame)

    def test_norm_support_duality(self):
        body = random_ellipsoid(4, 6)
        u = np.random.default_rng(7).standard_normal((10, 4))
        assert np.allclose(body.support(u), body.polar().minkowski_norm(u), rtol=1e-12)


class TestSectionVolume:
    def test_ball(self):
        xi = np.array([[0.0, 0.6, 0.8]])
        assert Ellipsoid.ball(3, 2.0).hyperplane_section_volume(xi)[0] == pytest.approx(4.0 * math.pi, rel=1e-12)

    def test_matches_section(self):
        body = random_ellipsoid(4, 8)
        xi = np.random.default_rng(9).standard_normal(4)
        xi /= np.linalg.norm(xi)
        cut = section(body, Subspace(xi[:, None]).complement())
        assert float(body.hyperplane_section_volume(xi)) == pytest.approx(volume(cut), rel=1e-9)


class TestEllipsePerimeter:
    def test_circle(self):
        assert ellipse_perimeter(2.0, 2.0) == pytest.approx(4.0 * math.pi, rel=1e-14)

    def test_axes_12(self):
        assert ellipse_perimeter(1.0, 2.0) == pytest.approx(9.68845, abs=5e-6)
        assert ellipse_perimeter(2.0, 1.0) == ellipse_perimeter(1.0, 2.0)
