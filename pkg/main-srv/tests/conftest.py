"""
main-srv/tests/conftest.py

Shared fixtures: hand-solvable scalar instances and their closed forms.
"""

import math

import numpy as np
import pytest

from config_manager.config_manager import SolverSettings
from synthesis.models import ProblemInstance
from synthesis.synthesizer import synthesize


# =============================================================================
# === Скалярный оракул A = 0.5, B = 1, Q = 1, R = 1, S = 0 ===
# =============================================================================

SCALAR_P = (0.25 + math.sqrt(4.0625)) / 2.0
SCALAR_K = 0.5 * SCALAR_P / (1.0 + SCALAR_P)
SCALAR_A_PLUS = 0.5 - SCALAR_K
SCALAR_G = 1.0 / (1.0 + SCALAR_P)
SCALAR_W = SCALAR_G / (1.0 - SCALAR_A_PLUS ** 2)
SCALAR_KBAR = (1.0 - SCALAR_P * 0.5 * SCALAR_W * SCALAR_A_PLUS) / (1.0 + SCALAR_P)


def scalar_instance(k_f: int = 5, A: float = 0.5, B: float = 1.0, Q: float = 1.0,
                    R: float = 1.0, S: float = 0.0) -> ProblemInstance:
    return ProblemInstance.create(A=[[A]], B=[[B]], Q=[[Q]], R=[[R]], S=[[S]], k_f=k_f)


@pytest.fixture
def settings() -> SolverSettings:
    return SolverSettings()


@pytest.fixture
def scalar() -> ProblemInstance:
    """A = 0.5, B = 1, Q = 1, R = 1, S = 0, k_f = 5."""
    return scalar_instance()


@pytest.fixture
def scalar_syn(scalar):
    return synthesize(scalar)


@pytest.fixture
def trivial_scalar() -> ProblemInstance:
    """Q = 0: P+ = 0, A+ = 0.5, W = 4/3, K̄+ = 1."""
    return scalar_instance(Q=0.0)


@pytest.fixture
def zero_instance() -> ProblemInstance:
    """A = B = Q = S = 0, R = I."""
    n, m = 2, 2
    return ProblemInstance.create(
        A=np.zeros((n, n)), B=np.zeros((n, m)), Q=np.zeros((n, n)),
        R=np.eye(m), S=np.zeros((n, m)), k_f=3,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240517)
