"""
main-srv/src/oracle/comparison.py

Brute-force comparison of the (α, β) parametrization with the null space
of the stacked constraint system.

Features:
- parametrization_matrix: 2n columns, one full trajectory per unit α or β.
- oracle_null_space: stacked system and its null space, built once per instance.
- compare_solution_sets: oracle dimension, parametrization rank and the
  worst component of a parametrization column outside the oracle null space.
- null_space_mode_residual: every oracle null-space vector, decoupled,
  must satisfy v_{k+1} = A+v_k and A+ᵀw_{k+1} = w_k.

Architecture:
- Null space and rank share the relative threshold tol·‖·‖_F, so the
  dimension comparison is like-for-like.
- Projection onto the null space uses the orthonormal basis: ΠN = N·Nᵀ.
- Mismatches are reported, never raised.
"""

__version__ = "1.0.0"
__description__ = "Null-space oracle for the solution-set parametrization"

import logging
from dataclasses import dataclass

import numpy as np

from hamiltonian.models import ModeParams
from hamiltonian.modes import decouple_trajectory, mode_residual
from hamiltonian.trajectories import complete_trajectory
from matrix_core.matrix_core import Matrix, NullSpaceBasis, null_space_basis, numerical_rank
from oracle.stacked_system import (
    DEFAULT_MAX_UNKNOWNS,
    StackedSystem,
    build_stacked_system,
    stack_trajectory,
    unstack_vector,
)
from synthesis.models import ProblemInstance, SynthesisResult

logger = logging.getLogger(__name__)

#: Порог нуль-пространства и ранга по умолчанию (относительно ‖·‖_F).
DEFAULT_NULL_SPACE_TOL: float = 1e-9


@dataclass(frozen=True)
class SubspaceComparison:
    """Сравнение множества решений оракула с образом параметризации."""
    oracle_dim: int
    param_rank: int
    containment_residual: float
    dims_match: bool

    def passes(self, containment_tol: float) -> bool:
        return self.dims_match and self.containment_residual <= containment_tol


def parametrization_matrix(
    inst: ProblemInstance,
    syn: SynthesisResult,
    system: StackedSystem | None = None,
) -> Matrix:
    """
    Столбец j есть полная траектория для α = e_j, β = 0 (j < n)
    или α = 0, β = e_{j−n} (j ≥ n), в раскладке StackedSystem.
    """
    system = system or build_stacked_system(inst)
    n = inst.n
    identity = np.eye(n)
    zero = np.zeros(n)

    columns = []
    for j in range(2 * n):
        if j < n:
            params = ModeParams(alpha=identity[j], beta=zero)
        else:
            params = ModeParams(alpha=zero, beta=identity[j - n])
        columns.append(stack_trajectory(system, complete_trajectory(inst, syn, params)))
    return np.column_stack(columns)


def _containment_residual(basis: NullSpaceBasis, columns: Matrix) -> float:
    """max_c ‖c − ΠN·c‖ / max(1, ‖c‖) по столбцам."""
    worst = 0.0
    for c in columns.T:
        outside = c - basis.project(c)
        worst = max(worst, float(np.linalg.norm(outside)) / max(1.0, float(np.linalg.norm(c))))
    return worst


@dataclass(frozen=True)
class OracleNullSpace:
    """Стековая система и ортонормальный базис её нуль-пространства."""
    system: StackedSystem
    basis: NullSpaceBasis


def oracle_null_space(
    inst: ProblemInstance,
    tol: float = DEFAULT_NULL_SPACE_TOL,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
) -> OracleNullSpace:
    """
    Строит стековую систему и её нуль-пространство один раз для всех сравнений.

    Raises:
        TooLarge: стековая система больше max_unknowns неизвестных.
        HorizonTooShort: k_f < 1.
    """
    system = build_stacked_system(inst, max_unknowns=max_unknowns)
    return OracleNullSpace(system=system, basis=null_space_basis(system.M, tol))


def compare_solution_sets(
    inst: ProblemInstance,
    syn: SynthesisResult,
    tol: float = DEFAULT_NULL_SPACE_TOL,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
    oracle: OracleNullSpace | None = None,
) -> SubspaceComparison:
    """
    Сравнивает нуль-пространство стековой системы с параметризацией.
    Готовый oracle переиспользуется, иначе строится по tol и max_unknowns.

    Raises:
        TooLarge: стековая система больше max_unknowns неизвестных.
        HorizonTooShort: k_f < 1.
    """
    oracle = oracle or oracle_null_space(inst, tol, max_unknowns)
    basis = oracle.basis
    columns = parametrization_matrix(inst, syn, oracle.system)
    param_rank = numerical_rank(columns, basis.tol)

    comparison = SubspaceComparison(
        oracle_dim=basis.dim,
        param_rank=param_rank,
        containment_residual=_containment_residual(basis, columns),
        dims_match=basis.dim == param_rank,
    )
    if not comparison.dims_match:
        logger.warning(
            "Solution-set dimension mismatch: oracle %d vs parametrization %d",
            comparison.oracle_dim, comparison.param_rank,
        )
    logger.info(
        "Oracle comparison: dim %d, rank %d, containment %.3e",
        comparison.oracle_dim, comparison.param_rank, comparison.containment_residual,
    )
    return comparison


def null_space_mode_residual(
    inst: ProblemInstance,
    syn: SynthesisResult,
    tol: float = DEFAULT_NULL_SPACE_TOL,
    max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
    oracle: OracleNullSpace | None = None,
) -> float:
    """
    Наихудшая невязка развязанных рекурсий по всем базисным векторам
    нуль-пространства оракула.
    """
    oracle = oracle or oracle_null_space(inst, tol, max_unknowns)

    worst = 0.0
    for z in oracle.basis.basis.T:
        modes = decouple_trajectory(unstack_vector(oracle.system, z), syn)
        worst = max(worst, *mode_residual(modes, syn))
    logger.debug("Null-space mode residual over %d vectors: %.3e", oracle.basis.dim, worst)
    return worst
