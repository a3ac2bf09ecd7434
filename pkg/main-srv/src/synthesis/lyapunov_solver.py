"""
main-srv/src/synthesis/lyapunov_solver.py

W from the symmetric discrete Lyapunov equation and the gain K̄+.

    A+·W·A+ᵀ − W + B(R + BᵀP+B)⁻¹Bᵀ = 0
    K̄+ = (R + BᵀP+B)⁻¹(Bᵀ − BᵀP+·A·W·A+ᵀ − Sᵀ·W·A+ᵀ)

For n ≤ lyapunov_direct_max_n the equation is solved directly through the
n²×n² vectorized system; above that the series W = Σ_j A+ʲ G (A+ᵀ)ʲ is
summed until a term drops below tol·‖W‖_F.
"""

__version__ = "1.0.0"
__description__ = "Lyapunov solve for W and the K-bar gain"

import logging

import numpy as np

from exceptions import NoConvergence
from matrix_core.matrix_core import Matrix, frobenius_norm, solve_discrete_lyapunov, symmetrize
from synthesis.models import ProblemInstance
from synthesis.riccati_solver import solve_inner

logger = logging.getLogger(__name__)

#: Граница перехода от прямого решения к суммированию ряда.
DIRECT_SOLVE_MAX_N: int = 30

#: Предел числа членов ряда.
SERIES_MAX_TERMS: int = 100000


def lyapunov_constant(inst: ProblemInstance, P_plus: Matrix) -> Matrix:
    """G = B(R + BᵀP+B)⁻¹Bᵀ."""
    return inst.B @ solve_inner(inst, P_plus, inst.B.T)


def _sum_series(A_plus: Matrix, G: Matrix, tol: float, max_terms: int) -> Matrix:
    """W = Σ_j A+ʲ G (A+ᵀ)ʲ до члена с нормой < tol·‖W‖_F."""
    W = G.copy()
    term = G.copy()
    for j in range(1, max_terms + 1):
        term = A_plus @ term @ A_plus.T
        W += term
        if frobenius_norm(term) < tol * max(frobenius_norm(W), np.finfo(float).tiny):
            logger.debug("Lyapunov series stopped after %d terms", j)
            return W
    raise NoConvergence(f"Lyapunov series did not settle in {max_terms} terms")


def solve_lyapunov_W(
    inst: ProblemInstance,
    P_plus: Matrix,
    A_plus: Matrix,
    tol: float = 1e-12,
    direct_max_n: int = DIRECT_SOLVE_MAX_N,
    max_terms: int = SERIES_MAX_TERMS,
) -> Matrix:
    """
    Решает W = A+ W A+ᵀ + G и возвращает симметричное W.

    Args:
        inst: экземпляр задачи.
        P_plus: стабилизирующее решение Риккати.
        A_plus: устойчивая по Шуру замкнутая матрица.
        tol: порог остановки ряда (для n > direct_max_n).
        direct_max_n: наибольшее n для прямого решения.
        max_terms: предел числа членов ряда.

    Raises:
        SingularMatrix: прямое решение вырождено (A+ не устойчива).
        SingularInnerMatrix: R + BᵀP+B вырождена.
        NoConvergence: ряд не сошёлся за max_terms членов.
    """
    G = lyapunov_constant(inst, P_plus)
    if not np.any(G):
        # B = 0: постоянный член нулевой, решение W = 0
        return np.zeros_like(G)

    if inst.n <= direct_max_n:
        W = solve_discrete_lyapunov(A_plus, G)
        logger.debug("W solved directly (n=%d)", inst.n)
    else:
        W = _sum_series(A_plus, G, tol, max_terms)

    return symmetrize(W)


def compute_kbar(inst: ProblemInstance, P_plus: Matrix, W: Matrix, A_plus: Matrix) -> Matrix:
    """K̄+ = (R + BᵀP+B)⁻¹(Bᵀ − BᵀP+·A·W·A+ᵀ − Sᵀ·W·A+ᵀ), форма m×n."""
    A, B, S = inst.A, inst.B, inst.S
    numerator = B.T - B.T @ P_plus @ A @ W @ A_plus.T - S.T @ W @ A_plus.T
    return solve_inner(inst, P_plus, numerator)
