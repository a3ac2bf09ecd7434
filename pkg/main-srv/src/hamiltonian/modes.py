"""
main-srv/src/hamiltonian/modes.py

Change of basis (x, p) <-> (v, w) and the decoupled mode dynamics.

    x = v + W·w                     v = (I − W·P+)·x + W·p
    p = P+·v + (P+W − I)·w          w = P+·x − p
    u_k = −K+·v_k + K̄+·w_{k+1}

In the new basis the Hamiltonian system splits into a forward recursion
v_{k+1} = A+·v_k and a backward one A+ᵀ·w_{k+1} = w_k.

couple/decouple accept a single vector (shape (n,)) or a row-stacked
sequence (shape (K, n)): all products are written as `rows @ M.T`.
"""

__version__ = "1.0.0"
__description__ = "Decoupling transform and mode propagation"

import logging

import numpy as np

from exceptions import DimensionMismatch
from hamiltonian.models import ModeParams, ModeTrajectory, Trajectory
from matrix_core.matrix_core import frobenius_norm
from synthesis.models import ProblemInstance, SynthesisResult

logger = logging.getLogger(__name__)


def propagate_modes(params: ModeParams, syn: SynthesisResult, k_f: int) -> ModeTrajectory:
    """
    v_k = A+ᵏ·α (вперёд от α), w_k = (A+ᵀ)^{k_f−k}·β (назад от w_{k_f} = β).

    w считается обратным проходом w_k = A+ᵀ·w_{k+1}: обращать A+ не нужно.
    """
    A_plus = syn.A_plus
    n = A_plus.shape[0]
    if params.alpha.shape != (n,) or params.beta.shape != (n,):
        raise DimensionMismatch(f"mode parameters must have length {n}")
    if k_f < 0:
        raise DimensionMismatch(f"horizon must be non-negative, got {k_f}")

    v = np.empty((k_f + 1, n))
    w = np.empty((k_f + 1, n))

    v[0] = params.alpha
    for k in range(k_f):
        v[k + 1] = A_plus @ v[k]

    w[k_f] = params.beta
    for k in range(k_f - 1, -1, -1):
        w[k] = A_plus.T @ w[k + 1]

    return ModeTrajectory(v=v, w=w)


def couple(v: np.ndarray, w: np.ndarray, syn: SynthesisResult) -> tuple[np.ndarray, np.ndarray]:
    """(v, w) → (x, p): x = v + W·w, p = P+·v + (P+W − I)·w."""
    P, W = syn.P_plus, syn.W
    PW_I = P @ W - np.eye(P.shape[0])
    x = v + w @ W.T
    p = v @ P.T + w @ PW_I.T
    return x, p


def decouple(x: np.ndarray, p: np.ndarray, syn: SynthesisResult) -> tuple[np.ndarray, np.ndarray]:
    """(x, p) → (v, w): w = P+·x − p, v = (I − W·P+)·x + W·p."""
    P, W = syn.P_plus, syn.W
    I_WP = np.eye(P.shape[0]) - W @ P
    w = x @ P.T - p
    v = x @ I_WP.T + p @ W.T
    return v, w


def input_from_modes(v_k: np.ndarray, w_next: np.ndarray, syn: SynthesisResult) -> np.ndarray:
    """u_k = −K+·v_k + K̄+·w_{k+1}."""
    return -(v_k @ syn.K_plus.T) + w_next @ syn.Kbar_plus.T


def decouple_trajectory(traj: Trajectory, syn: SynthesisResult) -> ModeTrajectory:
    """Развязывает каждую пару (x_k, p_k) траектории."""
    v, w = decouple(traj.x, traj.p, syn)
    return ModeTrajectory(v=v, w=w)


def _sequence_scale(*sequences: np.ndarray) -> float:
    return max(1.0, *(frobenius_norm(s) for s in sequences))


def mode_residual(modes: ModeTrajectory, syn: SynthesisResult) -> tuple[float, float]:
    """
    Невязки развязанных рекурсий, максимум по k:

        forward  = max_k ‖v_{k+1} − A+·v_k‖
        backward = max_k ‖A+ᵀ·w_{k+1} − w_k‖

    обе отнесены к max(1, ‖v‖_F, ‖w‖_F).
    """
    A_plus = syn.A_plus
    if modes.v.shape[0] < 2:
        return 0.0, 0.0

    scale = _sequence_scale(modes.v, modes.w)
    forward = modes.v[1:] - modes.v[:-1] @ A_plus.T
    backward = modes.w[1:] @ A_plus - modes.w[:-1]
    return (
        float(np.linalg.norm(forward, axis=1).max()) / scale,
        float(np.linalg.norm(backward, axis=1).max()) / scale,
    )


def stable_mode_update_residual(
    inst: ProblemInstance,
    syn: SynthesisResult,
    modes: ModeTrajectory,
) -> float:
    """
    Промежуточное соотношение вывода, до подстановки A+ᵀw_{k+1} = w_k:

        v_{k+1} = A+·v_k − A·W·A+ᵀ·w_{k+1} + A·W·w_k

    Возвращает максимум нормы невязки по k, отнесённый к масштабу мод.
    """
    if modes.v.shape[0] < 2:
        return 0.0

    A, A_plus, W = inst.A, syn.A_plus, syn.W
    AW = A @ W
    AWA_plus_T = AW @ A_plus.T
    rhs = modes.v[:-1] @ A_plus.T - modes.w[1:] @ AWA_plus_T.T + modes.w[:-1] @ AW.T
    residual = modes.v[1:] - rhs
    return float(np.linalg.norm(residual, axis=1).max()) / _sequence_scale(modes.v, modes.w)
