"""
main-srv/src/hamiltonian/models.py

Value objects of the Hamiltonian stage.

Sequences are stored as 2-D arrays whose row k is the vector at time k:
- ModeTrajectory.v, .w: shape (k_f + 1, n)
- Trajectory.x, .p:     shape (k_f + 1, n) or (k_f, n) for the (x, p, u) form
- Trajectory.u:         shape (k_f, m) or None
"""

__version__ = "1.0.0"
__description__ = "Hamiltonian value objects"

from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from matrix_core.matrix_core import as_vector


@dataclass(frozen=True)
class ModeParams:
    """Свободные векторы α, β ∈ ℝⁿ, параметризующие множество решений."""
    alpha: np.ndarray
    beta: np.ndarray

    @classmethod
    def create(cls, alpha: Any, beta: Any, n: int) -> "ModeParams":
        """
        Raises:
            DimensionMismatch: длина α или β не равна n.
        """
        return cls(alpha=as_vector(alpha, n, "alpha"), beta=as_vector(beta, n, "beta"))

    @classmethod
    def random_unit(cls, rng: np.random.Generator, n: int) -> "ModeParams":
        """Случайная пара с ‖[α; β]‖ = 1."""
        z = rng.standard_normal(2 * n)
        z /= np.linalg.norm(z)
        return cls(alpha=z[:n], beta=z[n:])

    def __add__(self, other: "ModeParams") -> "ModeParams":
        return ModeParams(alpha=self.alpha + other.alpha, beta=self.beta + other.beta)


@dataclass(frozen=True)
class ModeTrajectory:
    """Решения развязанных уравнений v_{k+1} = A+v_k, A+ᵀw_{k+1} = w_k."""
    v: np.ndarray
    w: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Последовательности x_k, p_k и (опционально) u_k."""
    x: np.ndarray
    p: np.ndarray
    u: np.ndarray | None = None

    @property
    def has_input(self) -> bool:
        return self.u is not None

    def __add__(self, other: "Trajectory") -> "Trajectory":
        u = None if self.u is None or other.u is None else self.u + other.u
        return Trajectory(x=self.x + other.x, p=self.p + other.p, u=u)


@dataclass(frozen=True)
class ResidualReport:
    """
    Максимумы по k норм невязок уравнений гамильтоновой системы,
    отнесённые к max(1, ‖траектория‖):

    - r1: x_{k+1} − A x_k − B u_k
    - r2: −Aᵀp_{k+1} − Q x_k + p_k − S u_k
    - r3: −Bᵀp_{k+1} − Sᵀx_k − R u_k
    """
    r1: float
    r2: float
    r3: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def max_residual(self) -> float:
        return max(self.r1, self.r2, self.r3)

    def passes(self, tol: float) -> bool:
        return self.max_residual() <= tol
