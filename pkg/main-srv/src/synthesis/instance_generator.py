"""
main-srv/src/synthesis/instance_generator.py

Seeded random problem instances.

Implementation:
- A with independent N(0,1) entries, rescaled to a target spectral radius (0.9).
- B dense N(0,1).
- [[Q, S], [Sᵀ, R]] = L·Lᵀ for a random square L, symmetrized exactly.
- R nudged by a ridge (1e-6·I) so R + BᵀPB is generically invertible.

The same seed always yields the same instance (numpy default_rng / PCG64).
"""

__version__ = "1.0.0"
__description__ = "Seeded random instance generator"

import logging

import numpy as np

from exceptions import HorizonTooShort, InstanceInvalid
from matrix_core.matrix_core import spectral_radius, symmetrize
from synthesis.models import ProblemInstance

logger = logging.getLogger(__name__)

DEFAULT_SPECTRAL_RADIUS: float = 0.9
DEFAULT_R_RIDGE: float = 1e-6


def generate_instance(
    seed: int,
    n: int,
    m: int,
    k_f: int,
    spectral_radius_target: float = DEFAULT_SPECTRAL_RADIUS,
    r_ridge: float = DEFAULT_R_RIDGE,
) -> ProblemInstance:
    """
    Генерирует валидный экземпляр по seed.

    Raises:
        InstanceInvalid: n или m меньше 1.
        HorizonTooShort: k_f меньше 1.
    """
    if n < 1 or m < 1:
        raise InstanceInvalid(f"generator needs n, m >= 1, got n={n}, m={m}")
    if k_f < 1:
        raise HorizonTooShort(f"generator needs kf >= 1, got {k_f}")

    rng = np.random.default_rng(seed)

    A = rng.standard_normal((n, n))
    radius = spectral_radius(A)
    if radius > 0.0:
        A = A * (spectral_radius_target / radius)

    B = rng.standard_normal((n, m))

    L = rng.standard_normal((n + m, n + m))
    compound = symmetrize(L @ L.T)
    Q = compound[:n, :n]
    S = compound[:n, n:]
    R = compound[n:, n:] + r_ridge * np.eye(m)

    logger.debug("Generated instance seed=%d n=%d m=%d kf=%d", seed, n, m, k_f)
    return ProblemInstance.create(A=A, B=B, Q=Q, R=R, S=S, k_f=k_f)
