"""
Tests for the Jacobi eigensolver and Gram-Schmidt orthonormalization.
"""

import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numkit.errors import DomainError, NonConvergence, RankDeficient
from numkit.linalg import (
    SymMatrix,
    orthonormality_residual,
    orthonormalize,
    orthonormalize_batch,
    sym_eigen,
)


def random_symmetric(n: int, seed: int) -> np.ndarray:
    g = np.random.default_rng(seed).standard_normal((n, n))
    return 0.5 * (g + g.T)


class TestSymMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(DomainError):
            SymMatrix(np.array([[1.0, 2.0], [2.0 + 1e-15, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DomainError):
            SymMatrix(np.ones((2, 3)))

    def test_symmetrized_is_exact(self):
        a = np.random.default_rng(0).standard_normal((5, 5))
        assert np.array_equal(SymMatrix.symmetrized(a).entries, SymMatrix.symmetrized(a).entries.T)


class TestSymEigen:
    def test_identity(self):
        result = sym_eigen(np.eye(5))
        assert np.allclose(result.eigenvalues, 1.0)

    def test_diagonal_sorted_ascending(self):
        result = sym_eigen(np.diag([9.0, 1.0, 4.0]))
        assert result.eigenvalues.tolist() == [1.0, 4.0, 9.0]
        assert np.allclose(np.abs(result.eigenvectors[:, 0]), [0.0, 1.0, 0.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_reconstruction(self, seed):
        a = random_symmetric(6, seed)
        result = sym_eigen(a)
        scale = np.max(np.abs(a))
        assert np.max(np.abs(result.reconstruct() - a)) <= 1e-10 * scale
        assert orthonormality_residual(result.eigenvectors) <= 1e-10
        assert np.all(np.diff(result.eigenvalues) >= 0.0)

    def test_deterministic(self):
        a = random_symmetric(8, 3)
        first, second = sym_eigen(a), sym_eigen(a)
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_agrees_with_lapack(self):
        a = random_symmetric(10, 4)
        assert np.allclose(sym_eigen(a).eigenvalues, np.linalg.eigvalsh(a), atol=1e-10)

    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_permutation_similarity(self, n, seed):
        a = random_symmetric(n, seed)
        p = np.eye(n)[np.random.default_rng(seed + 1).permutation(n)]
        permuted = SymMatrix.symmetrized(p @ a @ p.T)
        assert np.allclose(sym_eigen(a).eigenvalues, sym_eigen(permuted).eigenvalues, atol=1e-9)

    @given(st.integers(min_value=2, max_value=10), st.data())
    @settings(max_examples=40, deadline=None)
    def test_cauchy_interlacing(self, n, data):
        k = data.draw(st.integers(min_value=1, max_value=n - 1))
        seed = data.draw(st.integers(min_value=0, max_value=10_000))
        a = random_symmetric(n, seed)
        u = orthonormalize(np.random.default_rng(seed + 7).standard_normal((n, k)))
        lam = sym_eigen(a).eigenvalues
        mu = sym_eigen(SymMatrix.symmetrized(u.T @ a @ u)).eigenvalues
        for i in range(k):
            assert lam[i] <= mu[i] + 1e-9
            assert mu[i] <= lam[n - k + i] + 1e-9

    def test_positive_definite_batch_converges(self):
        for seed in range(300):
            g = np.random.default_rng(seed).standard_normal((5, 5))
            a = SymMatrix.symmetrized(g @ g.T + np.eye(5))
            result = sym_eigen(a)
            scale = np.max(np.abs(a.entries))
            assert np.max(np.abs(result.reconstruct() - a.entries)) <= 1e-10 * scale

    def test_tiny_off_diagonal_entry(self):
        a = np.array([[1.0, 1e-200, 0.0], [1e-200, 2.0, 1.0], [0.0, 1.0, 3.0]])
        with warnings.catch_warnings():
            warnings.simplefilter("error", RuntimeWarning)
            result = sym_eigen(a)
        assert np.allclose(result.eigenvalues, np.linalg.eigvalsh(a), atol=1e-12)

    def test_sweep_budget(self):
        with pytest.raises(NonConvergence):
            sym_eigen(random_symmetric(6, 9), max_sweeps=0)

    def test_dimension_cap(self):
        with pytest.raises(DomainError):
            sym_eigen(np.eye(65))


class TestOrthonormalize:
    def test_standard_basis_is_fixed(self):
        frame = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        assert np.allclose(frame, np.eye(3)[:, :2])

    def test_plane(self):
        frame = orthonormalize([[1.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
        assert orthonormality_residual(frame) <= 1e-12
        assert np.allclose(frame[2, :], 0.0)

    def test_random_gaussian(self):
        frame = orthonormalize(np.random.default_rng(5).standard_normal((7, 4)))
        assert orthonormality_residual(frame) <= 1e-12

    def test_span_preserved(self):
        columns = np.random.default_rng(6).standard_normal((5, 3))
        frame = orthonormalize(columns)
        assert np.allclose(frame @ frame.T @ columns, columns)

    @pytest.mark.parametrize("columns", [
        [[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]],
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
        [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
    ])
    def test_rank_deficient(self, columns):
        with pytest.raises(RankDeficient):
            orthonormalize(columns)

    def test_batch_matches_single(self):
        stack = np.random.default_rng(8).standard_normal((4, 6, 3))
        batch = orthonormalize_batch(stack)
        for i in range(4):
            assert np.allclose(batch[i], orthonormalize(stack[i]), atol=1e-12)
