"""
main-srv/src/synthesis/identities.py

Numerical check of the identity chain behind the decoupling transform.

Every identity is evaluated as ‖LHS − RHS‖_F / max(1, ‖LHS‖_F); nothing is
re-proven symbolically. The Property-1 form Q − P+ − SK+ = −AᵀP+A+ is the
authoritative acceptance check of the Riccati solution.
"""

__version__ = "1.0.0"
__description__ = "Identity residual suite"

import logging

import numpy as np

from exceptions import DimensionMismatch
from matrix_core.matrix_core import relative_residual
from synthesis.lyapunov_solver import lyapunov_constant
from synthesis.models import IdentityReport, ProblemInstance, SynthesisResult
from synthesis.riccati_solver import riccati_map

logger = logging.getLogger(__name__)


def _check_shapes(inst: ProblemInstance, result: SynthesisResult) -> None:
    n, m = inst.n, inst.m
    expected = {
        "P_plus": (n, n), "K_plus": (m, n), "A_plus": (n, n),
        "W": (n, n), "Kbar_plus": (m, n),
    }
    for name, shape in expected.items():
        actual = getattr(result, name).shape
        if actual != shape:
            raise DimensionMismatch(f"{name}: expected shape {shape}, got {actual}")


def verify_identities(inst: ProblemInstance, result: SynthesisResult) -> IdentityReport:
    """
    Вычисляет пять относительных невязок для результата синтеза.

    Невязки Риккати и Ляпунова пересчитываются через (R + BᵀP+B)⁻¹ заново,
    а не берутся из диагностики решателя: подменённые матрицы тоже ловятся.
    """
    _check_shapes(inst, result)

    A, B, Q, S = inst.A, inst.B, inst.Q, inst.S
    P, K, A_plus, W, Kbar = (
        result.P_plus, result.K_plus, result.A_plus, result.W, result.Kbar_plus
    )
    I = np.eye(inst.n)
    PW_I = P @ W - I

    report = IdentityReport(
        riccati_residual=relative_residual(P, riccati_map(inst, P)),
        lyapunov_residual=relative_residual(W, A_plus @ W @ A_plus.T + lyapunov_constant(inst, P)),
        eqW_residual=relative_residual(-W + B @ Kbar, -A @ W @ A_plus.T),
        property1_residual=relative_residual(Q - P - S @ K, -A.T @ P @ A_plus),
        property2_residual=relative_residual(
            -A.T @ PW_I, Q @ W @ A_plus.T - PW_I @ A_plus.T + S @ Kbar
        ),
    )
    logger.debug("Identity residuals: %s", report.as_dict())
    return report
