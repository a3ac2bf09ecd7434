"""
main-srv/tests/test_matrix_core.py
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from exceptions import ConfigInvalid, DimensionMismatch, InstanceInvalid, SingularMatrix
from matrix_core.matrix_core import (
    as_matrix,
    check_schur_stable,
    check_symmetric_psd,
    null_space_basis,
    numerical_rank,
    solve_discrete_lyapunov,
    solve_linear,
    spectral_radius,
)


# =============================================================================
# === solve_linear ===
# =============================================================================

@pytest.mark.parametrize(
    "M, rhs, expected",
    [
        (np.eye(2), [[3.0], [-1.0]], [[3.0], [-1.0]]),
        ([[2.0, 0.0], [0.0, 4.0]], [[2.0], [8.0]], [[1.0], [2.0]]),
        ([[1.0, 1.0], [1.0, 2.0]], [[3.0], [5.0]], [[1.0], [2.0]]),
    ],
)
def test_solve_linear_examples(M, rhs, expected):
    X = solve_linear(np.array(M, dtype=float), np.array(rhs))
    assert_allclose(X, expected, atol=1e-14)


def test_solve_linear_multiplies_back(rng):
    M = rng.standard_normal((6, 6)) + 6 * np.eye(6)
    rhs = rng.standard_normal((6, 3))
    assert_allclose(M @ solve_linear(M, rhs), rhs, atol=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_solve_linear_random_well_conditioned(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    # сдвиг на 2n·I держит число обусловленности небольшим
    M = rng.standard_normal((n, n)) + 2 * n * np.eye(n)
    rhs = rng.standard_normal(n)
    x = solve_linear(M, rhs)
    assert np.linalg.norm(M @ x - rhs) <= 1e-9 * np.linalg.norm(rhs)


def test_solve_linear_accepts_vector():
    x = solve_linear(np.array([[2.0, 0.0], [0.0, 4.0]]), np.array([2.0, 8.0]))
    assert x.shape == (2,)
    assert_allclose(x, [1.0, 2.0])


def test_solve_linear_singular():
    with pytest.raises(SingularMatrix):
        solve_linear(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 2.0]))


def test_solve_linear_pivot_threshold_is_relative():
    # масштаб 1e20 не должен делать хорошо обусловленную матрицу «вырожденной»
    M = 1e20 * np.array([[1.0, 1.0], [1.0, 2.0]])
    assert_allclose(solve_linear(M, np.array([3e20, 5e20])), [1.0, 2.0])


def test_solve_linear_shape_errors():
    with pytest.raises(DimensionMismatch):
        solve_linear(np.ones((2, 3)), np.ones(2))
    with pytest.raises(DimensionMismatch):
        solve_linear(np.eye(2), np.ones(3))


# =============================================================================
# === Нуль-пространство и ранг ===
# =============================================================================

def test_null_space_single_constraint():
    basis = null_space_basis(np.array([[1.0, 1.0]]), tol=1e-9)
    assert basis.dim == 1
    v = basis.basis[:, 0]
    assert_allclose(abs(v @ np.array([1.0, -1.0]) / np.sqrt(2.0)), 1.0, atol=1e-14)


def test_null_space_full_rank():
    basis = null_space_basis(np.eye(3), tol=1e-9)
    assert basis.dim == 0
    assert basis.basis.shape == (3, 0)


def test_null_space_rank_one():
    M = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])
    basis = null_space_basis(M, tol=1e-9)
    assert basis.dim == 2
    assert_allclose(M @ basis.basis, 0.0, atol=1e-14)
    assert_allclose(basis.basis.T @ basis.basis, np.eye(2), atol=1e-14)


def test_null_space_of_zero_matrix_is_everything():
    basis = null_space_basis(np.zeros((2, 4)), tol=1e-9)
    assert basis.dim == 4
    assert_allclose(basis.project(np.arange(4.0)), np.arange(4.0), atol=1e-14)


def test_rank_plus_nullity(rng):
    M = rng.standard_normal((5, 3)) @ rng.standard_normal((3, 8))
    assert numerical_rank(M, 1e-9) == 3
    assert null_space_basis(M, 1e-9).dim == 5


def test_null_space_rejects_non_positive_tol():
    with pytest.raises(ConfigInvalid):
        null_space_basis(np.eye(2), tol=0.0)


# =============================================================================
# === Симметрия, PSD, устойчивость ===
# =============================================================================

@pytest.mark.parametrize(
    "M, expected",
    [
        (np.zeros((2, 2)), True),
        (np.array([[1.0, 0.0], [0.0, -0.5]]), False),
        (np.array([[2.0, 1.0], [1.0, 2.0]]), True),
        (np.array([[1.0, 1.0], [0.0, 1.0]]), False),
    ],
)
def test_check_symmetric_psd(M, expected):
    assert check_symmetric_psd(M, sym_tol=1e-10, psd_tol=1e-9) is expected


def test_check_symmetric_psd_tolerates_rounding():
    M = np.array([[1.0, 1.0], [1.0, 1.0]]) - 1e-13 * np.eye(2)
    assert check_symmetric_psd(M, sym_tol=1e-10, psd_tol=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_gram_matrices_are_psd(seed):
    rng = np.random.default_rng(seed)
    n, k = int(rng.integers(1, 7)), int(rng.integers(1, 7))
    G = rng.standard_normal((n, k))
    assert check_symmetric_psd(G @ G.T, sym_tol=1e-10, psd_tol=1e-9)


@pytest.mark.parametrize(
    "M, expected",
    [
        (np.zeros((2, 2)), True),
        (np.eye(2), False),
        (np.array([[0.23443]]), True),
        (np.array([[1.5]]), False),
        (np.array([[0.0, 2.0], [0.0, 0.0]]), True),
        (np.array([[0.5, 10.0], [0.0, 0.9]]), True),
    ],
)
def test_check_schur_stable(M, expected):
    assert check_schur_stable(M) is expected


@pytest.mark.parametrize("seed", range(20))
def test_check_schur_stable_random_scaling(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    M = rng.standard_normal((n, n))
    M = M / spectral_radius(M)
    assert check_schur_stable(0.5 * M)
    assert not check_schur_stable(1.5 * M)


def test_discrete_lyapunov_solution(rng):
    M = 0.3 * rng.standard_normal((4, 4))
    G = rng.standard_normal((4, 4))
    G = G @ G.T
    X = solve_discrete_lyapunov(M, G)
    assert_allclose(X, M @ X @ M.T + G, atol=1e-10)


def test_as_matrix_rejects_non_finite_and_bad_shape():
    with pytest.raises(InstanceInvalid):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(InstanceInvalid):
        as_matrix([1.0, 2.0])
    with pytest.raises(InstanceInvalid):
        as_matrix([[1.0, 2.0], [3.0]])
