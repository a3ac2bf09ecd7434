"""
main-srv/src/synthesis/synthesizer.py

Single entry point for the synthesis stage.

Sequence:
1. P+ from the DARE fixed-point iteration (stabilizing, PSD checked by solve_dare)
2. K+ and A+ = A − B·K+
3. W from the discrete Lyapunov equation
4. K̄+
5. Symmetry/PSD check of W
"""

__version__ = "1.0.0"
__description__ = "Synthesis pipeline P+ -> K+ -> A+ -> W -> K-bar"

import logging

from config_manager.config_manager import SolverSettings
from exceptions import NotStabilizing
from matrix_core.matrix_core import check_symmetric_psd
from synthesis.lyapunov_solver import compute_kbar, solve_lyapunov_W
from synthesis.models import ProblemInstance, SynthesisResult
from synthesis.riccati_solver import compute_closed_loop, compute_gain, inner_matrix, solve_dare

logger = logging.getLogger(__name__)


def synthesize(inst: ProblemInstance, settings: SolverSettings | None = None) -> SynthesisResult:
    """
    Вычисляет P+, K+, A+, W, K̄+ для экземпляра.

    Args:
        inst: валидированный экземпляр.
        settings: допуски и пределы (по умолчанию SolverSettings()).

    Returns:
        SynthesisResult со всеми матрицами и диагностикой решателя Риккати.

    Raises:
        SingularInnerMatrix, NoConvergence, NotStabilizing, SingularMatrix:
            ошибки решателей пробрасываются без изменений.
    """
    settings = settings or SolverSettings()
    logger.info("Synthesis started: n=%d, m=%d, kf=%d", inst.n, inst.m, inst.k_f)

    dare = solve_dare(
        inst,
        tol=settings.dare_tol,
        max_iter=settings.dare_max_iter,
        sym_tol=settings.sym_tol,
        psd_tol=settings.psd_tol,
    )
    P_plus = dare.P_plus

    K_plus = compute_gain(inst, P_plus)
    A_plus = compute_closed_loop(inst, K_plus)

    W = solve_lyapunov_W(
        inst,
        P_plus,
        A_plus,
        tol=settings.lyapunov_tol,
        direct_max_n=settings.lyapunov_direct_max_n,
        max_terms=settings.lyapunov_max_terms,
    )
    if not check_symmetric_psd(W, settings.sym_tol, settings.psd_tol):
        # W = Σ A+ʲ G (A+ᵀ)ʲ с G ⪰ 0 обязан быть PSD; иначе A+ фактически неустойчива
        raise NotStabilizing("Lyapunov solution W is not symmetric positive semidefinite")

    Kbar_plus = compute_kbar(inst, P_plus, W, A_plus)

    result = SynthesisResult(
        P_plus=P_plus,
        K_plus=K_plus,
        A_plus=A_plus,
        W=W,
        Kbar_plus=Kbar_plus,
        inner=inner_matrix(inst, P_plus),
        dare_iterations=dare.iterations,
        dare_residual=dare.residual,
    )
    logger.info("Synthesis completed in %d DARE iterations", dare.iterations)
    return result
