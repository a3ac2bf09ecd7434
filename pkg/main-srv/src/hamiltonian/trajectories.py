"""
main-srv/src/hamiltonian/trajectories.py

Closed-form parametrizations of the admissible solution set.

(x, p) on 0 ≤ k ≤ k_f:
    [x_k; p_k] = [I; P+]·A+ᵏ·α + [W; P+W − I]·(A+ᵀ)^{k_f−k}·β

(x, p, u) on 0 ≤ k ≤ k_f − 1:
    [x_k; p_k; u_k] = [I; P+; −K+]·A+ᵏ·α
                      + [W·A+ᵀ; (P+W − I)·A+ᵀ; K̄+]·(A+ᵀ)^{k_f−k−1}·β

Both are compositions propagate_modes → couple (→ input_from_modes).
"""

__version__ = "1.0.0"
__description__ = "Trajectory generators of the (alpha, beta) parametrization"

import logging

from exceptions import HorizonTooShort
from hamiltonian.models import ModeParams, Trajectory
from hamiltonian.modes import couple, input_from_modes, propagate_modes
from synthesis.models import ProblemInstance, SynthesisResult

logger = logging.getLogger(__name__)


def trajectory_xp(inst: ProblemInstance, syn: SynthesisResult, params: ModeParams) -> Trajectory:
    """Пара (x_k, p_k) на 0..k_f; u отсутствует."""
    modes = propagate_modes(params, syn, inst.k_f)
    x, p = couple(modes.v, modes.w, syn)
    return Trajectory(x=x, p=p, u=None)


def trajectory_xpu(inst: ProblemInstance, syn: SynthesisResult, params: ModeParams) -> Trajectory:
    """
    Тройка (x_k, p_k, u_k) на 0..k_f−1.

    w_k переписан как A+ᵀ·w_{k+1}, поэтому x, p совпадают с trajectory_xp
    на общих индексах.

    Raises:
        HorizonTooShort: k_f < 1, интервал управления пуст.
    """
    if inst.k_f < 1:
        raise HorizonTooShort(f"(x, p, u) parametrization needs kf >= 1, got {inst.k_f}")

    modes = propagate_modes(params, syn, inst.k_f)
    v_k = modes.v[:-1]
    w_next = modes.w[1:]
    w_k = w_next @ syn.A_plus  # строки A+ᵀ·w_{k+1}

    x, p = couple(v_k, w_k, syn)
    u = input_from_modes(v_k, w_next, syn)
    return Trajectory(x=x, p=p, u=u)


def complete_trajectory(inst: ProblemInstance, syn: SynthesisResult, params: ModeParams) -> Trajectory:
    """
    (x, p, u) с x, p продолженными до k_f значениями из trajectory_xp.

    Уравнения системы ссылаются на индекс k+1, поэтому для проверки
    при k = k_f−1 нужны x_{k_f}, p_{k_f}.
    """
    xpu = trajectory_xpu(inst, syn, params)
    xp = trajectory_xp(inst, syn, params)

    x = xp.x.copy()
    p = xp.p.copy()
    x[:-1] = xpu.x
    p[:-1] = xpu.p
    return Trajectory(x=x, p=p, u=xpu.u)
