"""
main-srv/src/hamiltonian/residuals.py

Substitution check of the coupled Hamiltonian system

    x_{k+1} = A x_k + B u_k
    −Aᵀp_{k+1} = Q x_k − p_k + S u_k
    −Bᵀp_{k+1} = Sᵀx_k + R u_k,         0 ≤ k ≤ k_f − 1

on a trajectory with x, p through k_f and u through k_f − 1.
"""

__version__ = "1.0.0"
__description__ = "Hamiltonian residual checker"

import logging

import numpy as np

from exceptions import DimensionMismatch, HorizonTooShort, MissingInput
from hamiltonian.models import ResidualReport, Trajectory
from synthesis.models import ProblemInstance

logger = logging.getLogger(__name__)


def trajectory_magnitude(traj: Trajectory) -> float:
    """Евклидова норма всех элементов траектории вместе."""
    total = float(np.sum(traj.x ** 2) + np.sum(traj.p ** 2))
    if traj.u is not None:
        total += float(np.sum(traj.u ** 2))
    return float(np.sqrt(total))


def hamiltonian_residual(inst: ProblemInstance, traj: Trajectory) -> ResidualReport:
    """
    Невязки трёх уравнений, максимум по k, отнесённые к max(1, ‖траектория‖).

    Raises:
        MissingInput: в траектории нет u.
        HorizonTooShort: k_f < 1.
        DimensionMismatch: длины последовательностей не согласованы с k_f.
    """
    if traj.u is None:
        raise MissingInput("hamiltonian_residual needs the input sequence u")
    if inst.k_f < 1:
        raise HorizonTooShort(f"hamiltonian_residual needs kf >= 1, got {inst.k_f}")

    k_f = inst.k_f
    expected = {"x": (k_f + 1, inst.n), "p": (k_f + 1, inst.n), "u": (k_f, inst.m)}
    for name, shape in expected.items():
        actual = getattr(traj, name).shape
        if actual != shape:
            raise DimensionMismatch(
                f"trajectory {name}: expected shape {shape}, got {actual} "
                "(x and p must extend to index kf)"
            )

    A, B, Q, R, S = inst.A, inst.B, inst.Q, inst.R, inst.S
    x_k, x_next = traj.x[:-1], traj.x[1:]
    p_k, p_next = traj.p[:-1], traj.p[1:]
    u_k = traj.u

    # Строки соответствуют моментам времени k, поэтому M·z записано как z @ M.T
    r1 = x_next - x_k @ A.T - u_k @ B.T
    r2 = -(p_next @ A) - x_k @ Q.T + p_k - u_k @ S.T
    r3 = -(p_next @ B) - x_k @ S - u_k @ R.T

    scale = max(1.0, trajectory_magnitude(traj))
    report = ResidualReport(
        r1=float(np.linalg.norm(r1, axis=1).max()) / scale,
        r2=float(np.linalg.norm(r2, axis=1).max()) / scale,
        r3=float(np.linalg.norm(r3, axis=1).max()) / scale,
    )
    logger.debug("Hamiltonian residuals: %s", report.as_dict())
    return report
