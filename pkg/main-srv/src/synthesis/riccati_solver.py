"""
main-srv/src/synthesis/riccati_solver.py

Discrete algebraic Riccati equation and the feedback it induces.

Implementation:
- Fixed-point iteration
    P_{j+1} = Q + AᵀP_jA − (AᵀP_jB + S)(R + BᵀP_jB)⁻¹(BᵀP_jA + Sᵀ)
  from P_0 = Q, each iterate symmetrized as (P + Pᵀ)/2.
- Stop when the relative step ‖P_{j+1} − P_j‖_F / max(1, ‖P_{j+1}‖_F) ≤ tol.
- Gain K+ = (R + BᵀP+B)⁻¹(BᵀP+A + Sᵀ), closed loop A+ = A − B·K+.
- The converged solution is accepted only when it is symmetric PSD and A+ is Schur-stable.

Singular R is admitted as long as R + BᵀPB stays invertible along the iteration.
"""

__version__ = "1.0.0"
__description__ = "DARE fixed-point solver, gain and closed loop"

import logging

import numpy as np

from exceptions import (
    ConfigInvalid,
    NoConvergence,
    NotStabilizing,
    SingularInnerMatrix,
    SingularMatrix,
)
from matrix_core.matrix_core import (
    Matrix,
    check_schur_stable,
    check_symmetric_psd,
    frobenius_norm,
    solve_linear,
    symmetrize,
)
from synthesis.models import DareSolution, ProblemInstance

logger = logging.getLogger(__name__)

#: Как часто писать прогресс итерации в DEBUG-лог.
PROGRESS_LOG_EVERY: int = 500


def inner_matrix(inst: ProblemInstance, P: Matrix) -> Matrix:
    """R + BᵀPB."""
    return inst.R + inst.B.T @ P @ inst.B


def solve_inner(inst: ProblemInstance, P: Matrix, rhs: np.ndarray) -> np.ndarray:
    """(R + BᵀPB)⁻¹·rhs с переводом SingularMatrix в SingularInnerMatrix."""
    try:
        return solve_linear(inner_matrix(inst, P), rhs)
    except SingularMatrix as e:
        raise SingularInnerMatrix(f"R + B^T P B is numerically singular: {e}") from e


def riccati_map(inst: ProblemInstance, P: Matrix) -> Matrix:
    """
    Правая часть DARE:
        Q + AᵀPA − (AᵀPB + S)(R + BᵀPB)⁻¹(BᵀPA + Sᵀ)
    """
    A, B, Q, S = inst.A, inst.B, inst.Q, inst.S
    cross = B.T @ P @ A + S.T
    return Q + A.T @ P @ A - cross.T @ solve_inner(inst, P, cross)


def solve_dare(
    inst: ProblemInstance,
    tol: float = 1e-12,
    max_iter: int = 10000,
    sym_tol: float = 1e-10,
    psd_tol: float = 1e-9,
) -> DareSolution:
    """
    Стабилизирующее симметричное PSD решение P+ методом неподвижной точки.

    Args:
        inst: экземпляр задачи.
        tol: допуск относительной невязки.
        max_iter: предел числа итераций.
        sym_tol, psd_tol: допуски проверки симметрии и полуопределённости P+.

    Returns:
        DareSolution: P+, число итераций и итоговая невязка.

    Raises:
        ConfigInvalid: tol не положителен.
        SingularInnerMatrix: R + BᵀP_jB вырождена на какой-либо итерации.
        NoConvergence: невязка не опустилась до tol за max_iter шагов.
        NotStabilizing: A+ для найденного P не устойчива по Шуру
            или найденная неподвижная точка не симметрична PSD.
    """
    if tol <= 0:
        raise ConfigInvalid(f"solve_dare: tol must be positive, got {tol}")

    P = symmetrize(inst.Q.copy())
    residual = float("inf")

    for iteration in range(1, max_iter + 1):
        P_next = symmetrize(riccati_map(inst, P))
        residual = frobenius_norm(P_next - P) / max(1.0, frobenius_norm(P_next))
        P = P_next

        if iteration % PROGRESS_LOG_EVERY == 0:
            logger.debug("DARE iteration %d, residual %.3e", iteration, residual)

        if residual <= tol:
            break
    else:
        logger.error("DARE did not converge in %d iterations (residual %.3e)", max_iter, residual)
        raise NoConvergence(
            f"DARE fixed-point iteration did not reach tol {tol:.1e} in {max_iter} iterations "
            f"(last residual {residual:.3e})"
        )

    if not check_symmetric_psd(P, sym_tol, psd_tol):
        logger.error("Converged DARE solution is not positive semidefinite")
        raise NotStabilizing("DARE fixed point is not symmetric positive semidefinite")

    A_plus = compute_closed_loop(inst, compute_gain(inst, P))
    if not check_schur_stable(A_plus):
        logger.error("Converged DARE solution is not stabilizing")
        raise NotStabilizing("closed loop A - B K+ is not Schur-stable for the converged P")

    logger.info("DARE converged in %d iterations, residual %.3e", iteration, residual)
    return DareSolution(P_plus=P, iterations=iteration, residual=residual)


def compute_gain(inst: ProblemInstance, P_plus: Matrix) -> Matrix:
    """K+ = (R + BᵀP+B)⁻¹(BᵀP+A + Sᵀ), форма m×n."""
    return solve_inner(inst, P_plus, inst.B.T @ P_plus @ inst.A + inst.S.T)


def compute_closed_loop(inst: ProblemInstance, K_plus: Matrix) -> Matrix:
    """A+ = A − B·K+."""
    return inst.A - inst.B @ K_plus
