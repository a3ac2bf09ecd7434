"""
main-srv/src/matrix_core/matrix_core.py

Dense real-matrix primitives.

Features:
- Matrix construction with shape and finiteness validation (as_matrix, as_vector).
- Linear solve through LU with partial pivoting and a relative pivot threshold.
- Orthonormal null-space basis and numerical rank with a relative threshold.
- Symmetric/PSD check through the symmetric eigenvalue solver.
- Vectorized direct solve of the discrete Lyapunov equation X = M X Mᵀ + G.
- Schur stability decided by Lyapunov solvability plus PSD of the solution.

Architecture:
- Matrix is a 2-D float64 numpy.ndarray; all functions are pure and never
  modify their arguments.
- Thresholds are relative to the Frobenius norm of the input: absolute
  thresholds break on badly scaled instances.
"""

__version__ = "1.0.0"
__description__ = "Dense matrix primitives"

import logging
import warnings
from dataclasses import dataclass
from typing import Any, TypeAlias

import numpy as np
import scipy.linalg as la

from exceptions import ConfigInvalid, DimensionMismatch, InstanceInvalid, SingularMatrix

logger = logging.getLogger(__name__)

Matrix: TypeAlias = np.ndarray

# =============================================================================
# КОНСТАНТЫ МОДУЛЯ
# =============================================================================

#: Относительный порог ведущего элемента LU: |u_ii| < PIVOT_RTOL·‖M‖_F → вырождена.
PIVOT_RTOL: float = 1e-12

#: Допуски проверки устойчивости (решение Ляпунова должно быть симметричным PSD).
STABILITY_SYM_TOL: float = 1e-8
STABILITY_PSD_TOL: float = 1e-9


@dataclass(frozen=True)
class NullSpaceBasis:
    """
    Ортонормальный базис нуль-пространства {z : Mz = 0}.

    basis имеет dim столбцов; при dim = 0 это массив формы (c, 0).
    """
    dim: int
    basis: Matrix
    tol: float

    def project(self, z: np.ndarray) -> np.ndarray:
        """Ортогональная проекция ΠN·z = N·Nᵀ·z."""
        return self.basis @ (self.basis.T @ z)


# =============================================================================
# === Конструирование и нормы ===
# =============================================================================

def as_matrix(data: Any, name: str = "matrix") -> Matrix:
    """
    Приводит данные к плотной матрице float64 и проверяет инварианты.

    Raises:
        InstanceInvalid: не двумерная, пустая или содержит NaN/Inf.
    """
    try:
        matrix = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InstanceInvalid(f"{name}: not a numeric array ({e})") from e
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise InstanceInvalid(f"{name}: expected a non-empty 2-D array, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InstanceInvalid(f"{name}: entries must be finite")
    return matrix


def as_vector(data: Any, length: int, name: str = "vector") -> np.ndarray:
    """Приводит данные к вектору float64 заданной длины."""
    vector = np.array(data, dtype=np.float64).reshape(-1)
    if vector.shape[0] != length:
        raise DimensionMismatch(f"{name}: expected length {length}, got {vector.shape[0]}")
    if not np.all(np.isfinite(vector)):
        raise InstanceInvalid(f"{name}: entries must be finite")
    return vector


def frobenius_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix))


def relative_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """‖LHS − RHS‖_F / max(1, ‖LHS‖_F): единая мера невязки тождеств."""
    return frobenius_norm(lhs - rhs) / max(1.0, frobenius_norm(lhs))


def is_symmetric(matrix: Matrix, sym_tol: float) -> bool:
    return frobenius_norm(matrix - matrix.T) <= sym_tol * max(1.0, frobenius_norm(matrix))


def symmetrize(matrix: Matrix) -> Matrix:
    return (matrix + matrix.T) / 2.0


# =============================================================================
# === Линейные системы ===
# =============================================================================

def solve_linear(M: Matrix, rhs: np.ndarray) -> np.ndarray:
    """
    Решает M·X = RHS через LU с частичным выбором ведущего элемента.

    Args:
        M: квадратная матрица n×n.
        rhs: матрица n×q или вектор длины n.

    Returns:
        X той же формы, что и rhs.

    Raises:
        SingularMatrix: |u_ii| < 1e-12·‖M‖_F для какого-либо ведущего элемента.
        DimensionMismatch: M не квадратная или число строк rhs не совпадает.
    """
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"solve_linear: matrix must be square, got {M.shape}")
    if rhs.shape[0] != M.shape[0]:
        raise DimensionMismatch(
            f"solve_linear: right-hand side has {rhs.shape[0]} rows, expected {M.shape[0]}"
        )

    threshold = PIVOT_RTOL * frobenius_norm(M)
    with warnings.catch_warnings():
        # LinAlgWarning о точной вырожденности обрабатываем сами, по порогу
        warnings.simplefilter("ignore", la.LinAlgWarning)
        lu, piv = la.lu_factor(M, check_finite=False)

    pivots = np.abs(np.diag(lu))
    if pivots.size and (pivots.min() <= threshold):
        raise SingularMatrix(
            f"pivot {pivots.min():.3e} below threshold {threshold:.3e} (n={M.shape[0]})"
        )
    return la.lu_solve((lu, piv), rhs, check_finite=False)


def null_space_basis(M: Matrix, tol: float) -> NullSpaceBasis:
    """
    Ортонормальный базис нуль-пространства M.

    Ранг определяется по сингулярным числам с порогом tol·‖M‖_F,
    базис берётся из правых сингулярных векторов (ортонормален по построению).
    """
    if tol <= 0:
        raise ConfigInvalid(f"null_space_basis: tol must be positive, got {tol}")

    cols = M.shape[1]
    rank = numerical_rank(M, tol)
    if rank == cols:
        return NullSpaceBasis(dim=0, basis=np.zeros((cols, 0)), tol=tol)

    _, _, vh = la.svd(M, full_matrices=True, check_finite=False)
    basis = vh[rank:].T.copy()
    logger.debug("Null space: %d columns, rank %d, dim %d", cols, rank, cols - rank)
    return NullSpaceBasis(dim=cols - rank, basis=basis, tol=tol)


def numerical_rank(M: Matrix, tol: float) -> int:
    """Число сингулярных чисел больше tol·‖M‖_F."""
    norm = frobenius_norm(M)
    if norm == 0.0:
        return 0
    singular_values = la.svdvals(M, check_finite=False)
    return int(np.count_nonzero(singular_values > tol * norm))


# =============================================================================
# === Симметрия, полуопределённость, устойчивость ===
# =============================================================================

def check_symmetric_psd(M: Matrix, sym_tol: float, psd_tol: float) -> bool:
    """
    True, если M симметрична и (M + Mᵀ)/2 положительно полуопределена.

    Собственные значения симметризованной матрицы должны быть
    не меньше −psd_tol·max(1, ‖M‖_F).
    """
    if M.shape[0] != M.shape[1]:
        return False
    if not is_symmetric(M, sym_tol):
        return False
    eigenvalues = np.linalg.eigvalsh(symmetrize(M))
    return bool(eigenvalues.min() >= -psd_tol * max(1.0, frobenius_norm(M)))


def solve_discrete_lyapunov(M: Matrix, G: Matrix) -> Matrix:
    """
    Прямое решение X = M·X·Mᵀ + G.

    Векторизация по строкам: vec(M X Mᵀ) = (M ⊗ M)·vec(X),
    решается система (I − M ⊗ M)·vec(X) = vec(G) размера n²×n².

    Raises:
        SingularMatrix: у M есть пара собственных значений с λ_i·λ_j = 1.
    """
    n = M.shape[0]
    system = np.eye(n * n) - np.kron(M, M)
    solution = solve_linear(system, G.reshape(n * n))
    return solution.reshape(n, n)


def check_schur_stable(M: Matrix) -> bool:
    """
    Устойчивость по Шуру через уравнение Ляпунова X = M X Mᵀ + I.

    Решение существует и симметрично PSD тогда и только тогда,
    когда все собственные значения M строго внутри единичного круга.
    Вырожденная система означает «устойчивость не определена» → False.
    """
    n = M.shape[0]
    try:
        X = solve_discrete_lyapunov(M, np.eye(n))
    except SingularMatrix as e:
        logger.warning("Stability undecidable, Lyapunov solve is singular: %s", e)
        return False
    return check_symmetric_psd(X, STABILITY_SYM_TOL, STABILITY_PSD_TOL)


def spectral_radius(M: Matrix) -> float:
    """Спектральный радиус через собственные значения (для генератора экземпляров)."""
    return float(np.max(np.abs(np.linalg.eigvals(M))))
