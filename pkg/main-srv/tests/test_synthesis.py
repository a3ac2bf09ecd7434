"""
main-srv/tests/test_synthesis.py
"""

from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import (
    SCALAR_A_PLUS,
    SCALAR_K,
    SCALAR_KBAR,
    SCALAR_P,
    SCALAR_W,
    scalar_instance,
)
from config_manager.config_manager import SolverSettings
from exceptions import (
    ConfigInvalid,
    DimensionMismatch,
    HorizonTooShort,
    InstanceInvalid,
    NoConvergence,
    NotStabilizing,
    SingularInnerMatrix,
)
from matrix_core.matrix_core import check_schur_stable, check_symmetric_psd, spectral_radius
from synthesis.identities import verify_identities
from synthesis.instance_generator import generate_instance
from synthesis.lyapunov_solver import compute_kbar, solve_lyapunov_W
from synthesis.models import ProblemInstance
from synthesis.riccati_solver import compute_closed_loop, compute_gain, solve_dare
from synthesis.synthesizer import synthesize


# =============================================================================
# === ProblemInstance ===
# =============================================================================

def test_instance_rejects_non_symmetric_q():
    with pytest.raises(InstanceInvalid):
        ProblemInstance.create(
            A=np.eye(2), B=np.ones((2, 1)), Q=[[1.0, 0.5], [0.0, 1.0]],
            R=[[1.0]], S=np.zeros((2, 1)), k_f=3,
        )


def test_instance_rejects_indefinite_compound_block():
    # Q = 0, R = 1, S = 1: [[0, 1], [1, 1]] имеет отрицательное собственное значение
    with pytest.raises(InstanceInvalid):
        scalar_instance(Q=0.0, S=1.0)


def test_instance_rejects_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        ProblemInstance.create(
            A=np.eye(2), B=np.ones((2, 1)), Q=np.eye(2), R=np.eye(2), S=np.zeros((2, 1)), k_f=3,
        )


def test_instance_rejects_negative_horizon():
    with pytest.raises(InstanceInvalid):
        scalar_instance(k_f=-1)


def test_instance_allows_zero_horizon_and_is_read_only():
    inst = scalar_instance(k_f=0)
    assert inst.k_f == 0
    with pytest.raises(ValueError):
        inst.A[0, 0] = 1.0


# =============================================================================
# === Скалярные замкнутые формы ===
# =============================================================================

def test_scalar_closed_forms(scalar_syn):
    assert_allclose(scalar_syn.P_plus, [[SCALAR_P]], atol=1e-10)
    assert_allclose(scalar_syn.K_plus, [[SCALAR_K]], atol=1e-10)
    assert_allclose(scalar_syn.A_plus, [[SCALAR_A_PLUS]], atol=1e-10)
    assert_allclose(scalar_syn.W, [[SCALAR_W]], atol=1e-10)
    assert_allclose(scalar_syn.Kbar_plus, [[SCALAR_KBAR]], atol=1e-10)


def test_scalar_values_match_rounded_references(scalar_syn):
    assert_allclose(scalar_syn.P_plus[0, 0], 1.13278, atol=1e-5)
    assert_allclose(scalar_syn.K_plus[0, 0], 0.26557, atol=1e-5)
    assert_allclose(scalar_syn.A_plus[0, 0], 0.23443, atol=1e-5)
    assert_allclose(scalar_syn.W[0, 0], 0.49614, atol=1e-5)
    assert_allclose(scalar_syn.Kbar_plus[0, 0], 0.43798, atol=1e-5)


def test_zero_state_cost_gives_zero_riccati_solution(trivial_scalar):
    syn = synthesize(trivial_scalar)
    assert_allclose(syn.P_plus, [[0.0]], atol=1e-14)
    assert_allclose(syn.K_plus, [[0.0]], atol=1e-14)
    assert_allclose(syn.A_plus, [[0.5]], atol=1e-14)
    assert_allclose(syn.W, [[4.0 / 3.0]], atol=1e-12)
    assert_allclose(syn.Kbar_plus, [[1.0]], atol=1e-12)


def test_zero_input_matrix():
    inst = scalar_instance(A=0.3, B=0.0)
    syn = synthesize(inst)
    assert_allclose(syn.P_plus, [[1.0 / 0.91]], atol=1e-10)
    assert_allclose(syn.A_plus, [[0.3]], atol=1e-14)
    assert_allclose(syn.W, [[0.0]], atol=0.0)
    assert_allclose(syn.Kbar_plus, [[0.0]], atol=0.0)


def test_gain_reduces_to_cross_weight_when_riccati_solution_is_zero():
    inst = ProblemInstance.create(
        A=np.eye(2), B=np.eye(2), Q=np.eye(2), R=np.eye(2), S=np.eye(2), k_f=2,
    )
    assert_allclose(compute_gain(inst, np.zeros((2, 2))), np.eye(2))


def test_closed_loop_with_zero_gain_is_open_loop(scalar):
    assert_allclose(compute_closed_loop(scalar, np.zeros((1, 1))), scalar.A)


# =============================================================================
# === Ошибки решателей ===
# =============================================================================

def test_singular_inner_matrix():
    inst = scalar_instance(B=0.0, R=0.0)
    with pytest.raises(SingularInnerMatrix):
        solve_dare(inst)


def test_dare_iteration_limit(scalar):
    with pytest.raises(NoConvergence):
        solve_dare(scalar, tol=1e-12, max_iter=2)


def test_unstable_uncontrollable_mode_is_not_stabilizing():
    # B = 0, A = 1.2: неподвижной точки с устойчивой A+ нет
    inst = scalar_instance(A=1.2, B=0.0, Q=0.0)
    with pytest.raises((NotStabilizing, NoConvergence)):
        synthesize(inst)


def test_dare_reports_diagnostics(scalar):
    dare = solve_dare(scalar)
    assert dare.iterations >= 1
    assert dare.residual <= 1e-12


def test_dare_rejects_indefinite_fixed_point():
    # Q = −0.1 минует ProblemInstance.create: итерация сходится к P ≈ −0.141
    # при устойчивой A+ ≈ 0.58, поэтому отказ даёт только проверка PSD
    one = np.ones((1, 1))
    inst = ProblemInstance(
        n=1, m=1, k_f=3, A=0.5 * one, B=one, Q=-0.1 * one, R=one, S=np.zeros((1, 1))
    )
    with pytest.raises(NotStabilizing, match="positive semidefinite"):
        solve_dare(inst)


def test_dare_rejects_non_positive_tol(scalar):
    with pytest.raises(ConfigInvalid):
        solve_dare(scalar, tol=0.0)


@pytest.mark.parametrize("seed", range(20))
def test_riccati_trace_grows_with_state_weight(seed):
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 5)), int(rng.integers(1, 4))
    inst = generate_instance(seed, n, m, 3)
    heavier = ProblemInstance.create(
        A=inst.A, B=inst.B, Q=inst.Q + np.eye(n), R=inst.R, S=inst.S, k_f=inst.k_f
    )
    try:
        base = solve_dare(inst).P_plus
        raised = solve_dare(heavier).P_plus
    except (NoConvergence, NotStabilizing):
        pytest.skip("DARE did not yield a stabilizing solution")
    assert np.trace(raised) >= np.trace(base) - 1e-9 * max(1.0, abs(np.trace(base)))


# =============================================================================
# === Тождества ===
# =============================================================================

def test_identities_on_scalar(scalar, scalar_syn):
    report = verify_identities(scalar, scalar_syn)
    assert report.passes(1e-8)
    # ключевое соотношение: −W + BK̄+ = −A W A+ᵀ ≈ −0.058156
    lhs = -scalar_syn.W + scalar.B @ scalar_syn.Kbar_plus
    assert_allclose(lhs, [[-0.058156]], atol=1e-5)


def test_identities_on_zero_instance(zero_instance):
    syn = synthesize(zero_instance)
    report = verify_identities(zero_instance, syn)
    assert report.max_residual() == 0.0


def test_corrupted_w_is_detected(scalar, scalar_syn):
    corrupted = replace(scalar_syn, W=scalar_syn.W + np.eye(1))
    report = verify_identities(scalar, corrupted)
    assert report.lyapunov_residual > 0.1
    assert report.eqW_residual > 0.1


def test_identities_shape_check(scalar, scalar_syn):
    with pytest.raises(DimensionMismatch):
        verify_identities(scalar, replace(scalar_syn, W=np.eye(2)))


@pytest.mark.parametrize("seed", range(10))
def test_identities_on_generated_instances(seed):
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 6)), int(rng.integers(1, 4))
    inst = generate_instance(seed, n, m, 4)
    try:
        syn = synthesize(inst)
    except (NoConvergence, NotStabilizing):
        pytest.skip("DARE did not yield a stabilizing solution")
    assert verify_identities(inst, syn).passes(1e-8)
    assert check_schur_stable(syn.A_plus)
    assert check_symmetric_psd(syn.P_plus, 1e-10, 1e-9)
    assert check_symmetric_psd(syn.W, 1e-10, 1e-9)


def test_lyapunov_series_matches_direct_solve():
    inst = generate_instance(3, 4, 2, 3)
    syn = synthesize(inst)
    W_series = solve_lyapunov_W(inst, syn.P_plus, syn.A_plus, tol=1e-15, direct_max_n=0)
    assert_allclose(W_series, syn.W, atol=1e-10 * max(1.0, np.abs(syn.W).max()))
    Kbar = compute_kbar(inst, syn.P_plus, W_series, syn.A_plus)
    assert_allclose(Kbar, syn.Kbar_plus, atol=1e-8 * max(1.0, np.abs(syn.Kbar_plus).max()))


def test_settings_are_forwarded(scalar):
    strict = SolverSettings(dare_max_iter=1)
    with pytest.raises(NoConvergence):
        synthesize(scalar, strict)


# =============================================================================
# === Генератор ===
# =============================================================================

def test_generator_is_deterministic():
    a = generate_instance(1, 2, 1, 4)
    b = generate_instance(1, 2, 1, 4)
    for name in ("A", "B", "Q", "R", "S"):
        assert np.array_equal(getattr(a, name), getattr(b, name))


def test_generator_seed_sensitivity():
    assert not np.array_equal(generate_instance(1, 2, 1, 4).A, generate_instance(2, 2, 1, 4).A)


def test_generator_spectral_radius():
    inst = generate_instance(7, 4, 2, 3)
    assert_allclose(spectral_radius(inst.A), 0.9, atol=1e-12)


def test_generator_rejects_bad_dimensions():
    with pytest.raises(HorizonTooShort):
        generate_instance(1, 2, 1, 0)
    with pytest.raises(InstanceInvalid):
        generate_instance(1, 0, 1, 3)
