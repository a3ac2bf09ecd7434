"""
main-srv/src/synthesis/models.py

Value objects of the synthesis stage.

- ProblemInstance: the Hamiltonian system data (A, B, Q, R, S) with horizon k_f.
- DareSolution: P+ with fixed-point iteration diagnostics.
- SynthesisResult: P+, K+, A+, W, K̄+ and the inner matrix R + BᵀP+B.
- IdentityReport: relative residuals of the identity chain.

All objects are frozen dataclasses over numpy arrays; arrays are never
mutated after construction, so instances may be shared between threads.
"""

__version__ = "1.0.0"
__description__ = "Synthesis value objects"

import logging
from dataclasses import dataclass, asdict
from typing import Any

import numpy as np

from exceptions import DimensionMismatch, InstanceInvalid
from matrix_core.matrix_core import Matrix, as_matrix, check_symmetric_psd, is_symmetric

logger = logging.getLogger(__name__)

# Допуски проверки экземпляра при загрузке
INSTANCE_SYM_TOL: float = 1e-10
INSTANCE_PSD_TOL: float = 1e-9


@dataclass(frozen=True)
class ProblemInstance:
    """
    Данные гамильтоновой системы: x_{k+1} = A x_k + B u_k и сопряжённые уравнения
    с весами Q, R, S на горизонте 0..k_f.

    Создавайте через ProblemInstance.create(): он проверяет размеры,
    симметрию Q и R и полуопределённость блока [[Q, S], [Sᵀ, R]].
    """
    n: int
    m: int
    k_f: int
    A: Matrix
    B: Matrix
    Q: Matrix
    R: Matrix
    S: Matrix

    @classmethod
    def create(
        cls,
        A: Any,
        B: Any,
        Q: Any,
        R: Any,
        S: Any,
        k_f: int,
    ) -> "ProblemInstance":
        """
        Строит и валидирует экземпляр.

        Raises:
            DimensionMismatch: формы матриц не согласованы.
            InstanceInvalid: Q или R несимметричны, составной блок не PSD,
                k_f отрицателен, есть NaN/Inf.
        """
        A = as_matrix(A, "A")
        B = as_matrix(B, "B")
        Q = as_matrix(Q, "Q")
        R = as_matrix(R, "R")
        S = as_matrix(S, "S")
        n, m = B.shape

        expected = {"A": (n, n), "Q": (n, n), "R": (m, m), "S": (n, m)}
        actual = {"A": A.shape, "Q": Q.shape, "R": R.shape, "S": S.shape}
        for name, shape in expected.items():
            if actual[name] != shape:
                raise DimensionMismatch(f"{name}: expected shape {shape}, got {actual[name]}")

        if int(k_f) != k_f or k_f < 0:
            raise InstanceInvalid(f"kf: expected a non-negative integer, got {k_f}")

        # Несимметричные веса отклоняются, а не симметризуются
        for name, matrix in (("Q", Q), ("R", R)):
            if not is_symmetric(matrix, INSTANCE_SYM_TOL):
                raise InstanceInvalid(f"{name} is not symmetric")

        compound = np.block([[Q, S], [S.T, R]])
        if not check_symmetric_psd(compound, INSTANCE_SYM_TOL, INSTANCE_PSD_TOL):
            raise InstanceInvalid("compound weight [[Q, S], [S^T, R]] is not positive semidefinite")

        for matrix in (A, B, Q, R, S):
            matrix.setflags(write=False)

        logger.debug("Problem instance accepted: n=%d, m=%d, kf=%d", n, m, k_f)
        return cls(n=n, m=m, k_f=int(k_f), A=A, B=B, Q=Q, R=R, S=S)


@dataclass(frozen=True)
class DareSolution:
    """Результат итерации Риккати."""
    P_plus: Matrix
    iterations: int
    residual: float


@dataclass(frozen=True)
class SynthesisResult:
    """Пять структурных матриц и диагностика решателя."""
    P_plus: Matrix
    K_plus: Matrix
    A_plus: Matrix
    W: Matrix
    Kbar_plus: Matrix
    inner: Matrix
    dare_iterations: int
    dare_residual: float


@dataclass(frozen=True)
class IdentityReport:
    """
    Относительные невязки ‖LHS − RHS‖_F / max(1, ‖LHS‖_F):

    - riccati_residual:   P+ = Q + AᵀP+A − (AᵀP+B + S)(R + BᵀP+B)⁻¹(BᵀP+A + Sᵀ)
    - lyapunov_residual:  W = A+ W A+ᵀ + B(R + BᵀP+B)⁻¹Bᵀ
    - eqW_residual:       −W + BK̄+ = −A W A+ᵀ
    - property1_residual: Q − P+ − SK+ = −AᵀP+A+
    - property2_residual: −Aᵀ(P+W − I) = QWA+ᵀ − (P+W − I)A+ᵀ + SK̄+
    """
    riccati_residual: float
    lyapunov_residual: float
    eqW_residual: float
    property1_residual: float
    property2_residual: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def max_residual(self) -> float:
        return max(self.as_dict().values())

    def passes(self, tol: float) -> bool:
        return self.max_residual() <= tol
