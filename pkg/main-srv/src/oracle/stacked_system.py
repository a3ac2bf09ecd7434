"""
main-srv/src/oracle/stacked_system.py

All Hamiltonian constraints over the horizon as one homogeneous linear system M·z = 0.

Variable layout of z (column blocks):
    x_0 .. x_{k_f}   (n each)
    p_0 .. p_{k_f}   (n each)
    u_0 .. u_{k_f−1} (m each)

Row blocks, for each k = 0..k_f−1 in order:
    n rows  x_{k+1} − A x_k − B u_k
    n rows  −Aᵀp_{k+1} − Q x_k + p_k − S u_k
    m rows  −Bᵀp_{k+1} − Sᵀx_k − R u_k

Shape: (2n·k_f + m·k_f) × (2n·(k_f+1) + m·k_f).
"""

__version__ = "1.0.0"
__description__ = "Stacked constraint system of the Hamiltonian equations"

import logging
from dataclasses import dataclass

import numpy as np

from exceptions import DimensionMismatch, HorizonTooShort, TooLarge
from hamiltonian.models import Trajectory
from matrix_core.matrix_core import Matrix
from synthesis.models import ProblemInstance

logger = logging.getLogger(__name__)

#: Предел числа неизвестных для плотного оракула.
DEFAULT_MAX_UNKNOWNS: int = 2000


def stacked_unknowns(n: int, m: int, k_f: int) -> int:
    return 2 * n * (k_f + 1) + m * k_f


@dataclass(frozen=True)
class StackedSystem:
    """Матрица ограничений и её раскладка переменных."""
    M: Matrix
    n: int
    m: int
    k_f: int

    def x_slice(self, k: int) -> slice:
        return slice(k * self.n, (k + 1) * self.n)

    def p_slice(self, k: int) -> slice:
        offset = self.n * (self.k_f + 1)
        return slice(offset + k * self.n, offset + (k + 1) * self.n)

    def u_slice(self, k: int) -> slice:
        offset = 2 * self.n * (self.k_f + 1)
        return slice(offset + k * self.m, offset + (k + 1) * self.m)

    @property
    def unknowns(self) -> int:
        return self.M.shape[1]


def build_stacked_system(
    inst: ProblemInstance,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
) -> StackedSystem:
    """
    Собирает M так, что M·z = 0 ⇔ последовательности удовлетворяют
    всем трём уравнениям при 0 ≤ k ≤ k_f−1.

    Raises:
        HorizonTooShort: k_f < 1.
        TooLarge: число неизвестных больше max_unknowns.
    """
    n, m, k_f = inst.n, inst.m, inst.k_f
    if k_f < 1:
        raise HorizonTooShort(f"stacked system needs kf >= 1, got {k_f}")

    cols = stacked_unknowns(n, m, k_f)
    if cols > max_unknowns:
        raise TooLarge(f"stacked system has {cols} unknowns, limit is {max_unknowns}")

    rows = (2 * n + m) * k_f
    system = StackedSystem(M=np.zeros((rows, cols)), n=n, m=m, k_f=k_f)
    M = system.M
    I = np.eye(n)

    for k in range(k_f):
        base = k * (2 * n + m)
        eq1 = slice(base, base + n)
        eq2 = slice(base + n, base + 2 * n)
        eq3 = slice(base + 2 * n, base + 2 * n + m)
        x_k, x_next = system.x_slice(k), system.x_slice(k + 1)
        p_k, p_next = system.p_slice(k), system.p_slice(k + 1)
        u_k = system.u_slice(k)

        # x_{k+1} − A x_k − B u_k
        M[eq1, x_next] = I
        M[eq1, x_k] = -inst.A
        M[eq1, u_k] = -inst.B

        # −Aᵀp_{k+1} − Q x_k + p_k − S u_k
        M[eq2, p_next] = -inst.A.T
        M[eq2, x_k] = -inst.Q
        M[eq2, p_k] = I
        M[eq2, u_k] = -inst.S

        # −Bᵀp_{k+1} − Sᵀx_k − R u_k
        M[eq3, p_next] = -inst.B.T
        M[eq3, x_k] = -inst.S.T
        M[eq3, u_k] = -inst.R

    M.setflags(write=False)
    logger.debug("Stacked system built: %d x %d", rows, cols)
    return system


def stack_trajectory(system: StackedSystem, traj: Trajectory) -> np.ndarray:
    """Trajectory (x, p до k_f, u до k_f−1) → вектор z в раскладке системы."""
    n, m, k_f = system.n, system.m, system.k_f
    if traj.u is None or traj.x.shape != (k_f + 1, n) or traj.p.shape != (k_f + 1, n) \
            or traj.u.shape != (k_f, m):
        raise DimensionMismatch("trajectory must carry x, p on 0..kf and u on 0..kf-1")
    return np.concatenate([traj.x.reshape(-1), traj.p.reshape(-1), traj.u.reshape(-1)])


def unstack_vector(system: StackedSystem, z: np.ndarray) -> Trajectory:
    """Вектор z → Trajectory с x, p на 0..k_f и u на 0..k_f−1."""
    n, m, k_f = system.n, system.m, system.k_f
    if z.shape != (system.unknowns,):
        raise DimensionMismatch(f"vector must have length {system.unknowns}, got {z.shape}")
    split_p = n * (k_f + 1)
    split_u = 2 * split_p
    return Trajectory(
        x=z[:split_p].reshape(k_f + 1, n),
        p=z[split_p:split_u].reshape(k_f + 1, n),
        u=z[split_u:].reshape(k_f, m),
    )


def stacked_residual(system: StackedSystem, traj: Trajectory) -> float:
    """‖M·z‖ / max(1, ‖z‖) для траектории."""
    z = stack_trajectory(system, traj)
    return float(np.linalg.norm(system.M @ z)) / max(1.0, float(np.linalg.norm(z)))
