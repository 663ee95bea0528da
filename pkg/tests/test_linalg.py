import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from segstab import (
    DimensionError,
    IllConditioned,
    ToleranceConfig,
    bialternate_product,
    characteristic_polynomial,
    companion_from_quadratic,
    eigenvalues,
    index_pairs,
    solve_left,
    solve_right,
)
from segstab.errors import InvalidMatrixError

from .conftest import EX1_A1, EX1_A2, match_spectra


def bialternate_bruteforce(A, B):
    """Entry-by-entry definition with explicit 2x2 determinants."""
    n = A.shape[0]
    pairs = list(itertools.combinations(range(n), 2))
    F = np.zeros((len(pairs), len(pairs)))
    for r, (i, j) in enumerate(pairs):
        for c, (k, l) in enumerate(pairs):
            m1 = np.linalg.det(np.array([[A[i, k], A[i, l]], [B[j, k], B[j, l]]]))
            m2 = np.linalg.det(np.array([[B[i, k], B[i, l]], [A[j, k], A[j, l]]]))
            F[r, c] = 0.5 * (m1 + m2)
    return F


def quadratic_det_roots(X, Y):
    """Roots of det(lam^2 I + lam Y + X) by interpolating the degree-2d polynomial."""
    d = X.shape[0]
    deg = 2 * d
    nodes = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1)) * 2.0
    vals = [np.linalg.det(t * t * np.eye(d) + t * Y + X) for t in nodes]
    coeffs = np.polynomial.polynomial.polyfit(nodes, vals, deg)
    return np.polynomial.polynomial.polyroots(coeffs)


small_matrices = st.integers(2, 6).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-1, 1, allow_nan=False, width=64))
)


class TestIndexPairs:
    def test_lexicographic(self):
        assert index_pairs(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    @pytest.mark.parametrize("n", [1, 2, 3, 7])
    def test_size(self, n):
        pairs = index_pairs(n)
        assert len(pairs) == n * (n - 1) // 2
        assert pairs == sorted(pairs)


class TestBialternate:
    def test_identity(self):
        np.testing.assert_array_equal(bialternate_product(np.eye(3), np.eye(3)), np.eye(3))

    def test_2x2_is_determinant(self):
        A = np.array([[1.5, -2.0], [0.25, 3.0]])
        F = bialternate_product(A, A)
        assert F.shape == (1, 1)
        assert F[0, 0] == pytest.approx(np.linalg.det(A), abs=1e-15)

    def test_n1_is_empty(self):
        assert bialternate_product([[2.0]], [[3.0]]).shape == (0, 0)

    def test_rank_one_annihilated(self, rng):
        u, v = rng.normal(size=5), rng.normal(size=5)
        assert np.abs(bialternate_product(np.outer(u, v), np.outer(u, v))).max() <= 1e-12

    def test_example1_F0(self):
        F0 = np.eye(3) - bialternate_product(EX1_A2, EX1_A2)
        expected = [[1.27, 0.3, 0.32], [-0.09, 0.82, -0.24], [0.09, -0.06, 1.08]]
        np.testing.assert_allclose(F0, expected, atol=5e-3)

    def test_matches_bruteforce(self, rng):
        for n in range(2, 6):
            A, B = rng.normal(size=(n, n)), rng.normal(size=(n, n))
            np.testing.assert_allclose(bialternate_product(A, B), bialternate_bruteforce(A, B), atol=1e-13)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            bialternate_product(np.eye(2), np.eye(3))

    @given(small_matrices)
    @settings(max_examples=60, deadline=None)
    def test_symmetric_in_arguments(self, A):
        B = np.roll(A, 1, axis=0) - 0.5 * A.T
        np.testing.assert_array_equal(bialternate_product(A, B), bialternate_product(B, A))

    def test_bilinear(self, rng):
        for n in range(2, 7):
            A, B, C = (rng.uniform(-1, 1, size=(n, n)) for _ in range(3))
            lhs = bialternate_product(A + B, C)
            rhs = bialternate_product(A, C) + bialternate_product(B, C)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)
            np.testing.assert_allclose(bialternate_product(2.5 * A, C), 2.5 * bialternate_product(A, C), atol=1e-12)

    def test_eigenvalue_products(self, rng):
        for n in range(2, 7):
            A = rng.normal(size=(n, n))
            lam = np.linalg.eigvals(A)
            products = [lam[i] * lam[j] for i, j in itertools.combinations(range(n), 2)]
            assert match_spectra(eigenvalues(bialternate_product(A, A)), products) <= 1e-6


class TestEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(eigenvalues(np.eye(3)), [1, 1, 1])

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidMatrixError):
            eigenvalues([[np.nan, 0], [0, 1]])

    def test_rejects_nonsquare(self):
        with pytest.raises(DimensionError):
            eigenvalues(np.ones((2, 3)))

    def test_example1_condition_spectrum_truncated(self):
        # printed values are truncated, not rounded, to one decimal
        X = solve_right(np.eye(3) - EX1_A1, np.eye(3) - EX1_A2).x
        ev = np.sort(eigenvalues(X).real)
        np.testing.assert_array_equal(np.floor(ev * 10) / 10, [0.2, 1.2, 13.4])


class TestSolves:
    def test_right_identity(self, rng):
        A = rng.normal(size=(4, 4))
        np.testing.assert_allclose(solve_right(A, np.eye(4)).x, A, atol=1e-15)

    def test_self_division(self, rng):
        A = rng.normal(size=(5, 5))
        np.testing.assert_allclose(solve_right(A, A).x, np.eye(5), atol=1e-10)
        np.testing.assert_allclose(solve_left(A, A).x, np.eye(5), atol=1e-10)

    def test_right_and_left_definitions(self, rng):
        A, B = rng.normal(size=(4, 4)), rng.normal(size=(4, 4))
        np.testing.assert_allclose(solve_right(A, B).x @ B, A, atol=1e-10)
        np.testing.assert_allclose(B @ solve_left(A, B).x, A, atol=1e-10)

    def test_condition_estimate_reported(self):
        res = solve_right(np.eye(2), np.diag([1.0, 1e-3]))
        assert res.cond == pytest.approx(1e3, rel=1e-12)

    def test_singular(self):
        with pytest.raises(IllConditioned) as err:
            solve_right(np.eye(2), np.array([[1.0, 2.0], [2.0, 4.0]]))
        assert err.value.estimate > 1e12

    def test_cond_max_enforced(self):
        with pytest.raises(IllConditioned):
            solve_left(np.eye(2), np.diag([1.0, 1e-6]), cond_max=1e5)

    def test_example1_spectrum(self):
        X = solve_right(np.eye(3) - EX1_A1, np.eye(3) - EX1_A2).x
        ev = np.sort(eigenvalues(X).real)
        np.testing.assert_allclose(ev, [0.28793463, 1.23485947, 13.4281863], rtol=1e-7)


class TestCompanion:
    def test_zero(self):
        Z = companion_from_quadratic(np.zeros((2, 2)), np.zeros((2, 2)))
        assert Z.shape == (4, 4)
        np.testing.assert_allclose(eigenvalues(Z), 0, atol=1e-7)

    def test_scalar_quadratic(self):
        Z = companion_from_quadratic([[2.0]], [[-3.0]])
        np.testing.assert_allclose(np.sort(eigenvalues(Z).real), [1.0, 2.0])

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            companion_from_quadratic(np.eye(2), np.eye(3))

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_spectrum_matches_determinant_roots(self, rng, d):
        for _ in range(5):
            X, Y = rng.normal(size=(d, d)), rng.normal(size=(d, d))
            ev = eigenvalues(companion_from_quadratic(X, Y))
            assert match_spectra(ev, quadratic_det_roots(X, Y)) <= 1e-6


class TestCharacteristicPolynomial:
    def test_identity(self):
        np.testing.assert_allclose(characteristic_polynomial(np.eye(2)), [1, -2, 1])

    def test_diagonal(self):
        np.testing.assert_allclose(characteristic_polynomial(np.diag([2.0, 3.0])), [1, -5, 6])

    def test_matches_symmetric_functions(self, rng):
        for n in range(1, 7):
            A = rng.normal(size=(n, n))
            oracle = np.real(np.poly(np.linalg.eigvals(A)))
            np.testing.assert_allclose(characteristic_polynomial(A), oracle, atol=1e-8)


class TestToleranceConfig:
    def test_defaults(self):
        t = ToleranceConfig()
        assert (t.imag_tol, t.sign_tol, t.one_tol, t.cond_max) == (1e-8, 1e-9, 1e-9, 1e12)

    @pytest.mark.parametrize("field", ["imag_tol", "sign_tol", "one_tol", "cond_max"])
    def test_rejects_negative(self, field):
        with pytest.raises(ValueError):
            ToleranceConfig(**{field: -1.0})
