"""
main-srv/src/orchestrator/suite_runner.py

Seeded batch verification over generated instances.

Features:
- Case plan drawn once from the suite seed: dimensions, horizon, instance seed,
  oracle participation. Identical suite parameters give identical plans.
- Checks per case dispatched via mapping dict: identities, substitution
  (several random unit (α, β) per case), parametrization consistency,
  oracle equivalence with decoupled null-space modes.
- Cases on which the DARE iteration does not yield a stabilizing solution are
  skipped, not failed.
- Fault tolerance: an unexpected error fails its case and the suite continues.

Architecture:
- Cases are independent and all operations are pure, so they fan out over a
  ThreadPoolExecutor; outcomes are collected in plan order.
"""

__version__ = "1.0.0"
__description__ = "Batch verification suite over seeded instances"

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from config_manager.config_manager import SolverSettings
from exceptions import ConfigInvalid, HamsetError, NoConvergence, NotStabilizing, SingularMatrix
from hamiltonian.models import ModeParams
from hamiltonian.residuals import hamiltonian_residual
from hamiltonian.trajectories import complete_trajectory, trajectory_xp, trajectory_xpu
from oracle.comparison import compare_solution_sets, null_space_mode_residual, oracle_null_space
from oracle.stacked_system import stacked_unknowns
from synthesis.identities import verify_identities
from synthesis.instance_generator import generate_instance
from synthesis.models import ProblemInstance, SynthesisResult
from synthesis.synthesizer import synthesize

logger = logging.getLogger(__name__)

# =============================================================================
# НАСТРОЙКИ НАБОРА
# =============================================================================

#: Допуск согласованности двух параметризаций.
CONSISTENCY_TOL: float = 1e-12

#: Статусы случая
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIPPED = "skipped"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class SuiteConfig:
    """Параметры набора (флаги команды suite)."""
    count: int = 100
    seed: int = 0
    n_max: int = 5
    m_max: int = 3
    kf_min: int = 2
    kf_max: int = 12
    trajectories: int = 5
    oracle_count: int = 30
    workers: int = 4


@dataclass(frozen=True)
class SuiteCase:
    index: int
    instance_seed: int
    n: int
    m: int
    k_f: int
    with_oracle: bool


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool


@dataclass
class CaseOutcome:
    case: SuiteCase
    status: str
    checks: list[CheckResult] = field(default_factory=list)
    message: str = ""

    def worst(self, name: str) -> float | None:
        values = [check.value for check in self.checks if check.name == name]
        return max(values) if values else None


@dataclass
class SuiteSummary:
    config: SuiteConfig
    outcomes: list[CaseOutcome]
    elapsed_seconds: float

    def count(self, status: str) -> int:
        return sum(1 for outcome in self.outcomes if outcome.status == status)

    @property
    def verdict(self) -> bool:
        return self.count(STATUS_FAIL) == 0 and self.count(STATUS_ERROR) == 0

    def worst(self, name: str) -> float | None:
        values = [v for v in (outcome.worst(name) for outcome in self.outcomes) if v is not None]
        return max(values) if values else None

    def check_names(self) -> list[str]:
        names: list[str] = []
        for outcome in self.outcomes:
            for check in outcome.checks:
                if check.name not in names:
                    names.append(check.name)
        return names


# =============================================================================
# ПЛАН НАБОРА
# =============================================================================

def plan_cases(config: SuiteConfig, settings: SolverSettings) -> list[SuiteCase]:
    """
    Детерминированный план: один генератор на весь набор, розыгрыш в главном потоке.
    Оракул получают первые oracle_count случаев с размером системы в пределах лимита.
    """
    if config.count < 0:
        raise ConfigInvalid(f"count must be >= 0, got {config.count}")
    if config.n_max < 1 or config.m_max < 1:
        raise ConfigInvalid("n_max and m_max must be >= 1")
    if not 1 <= config.kf_min <= config.kf_max:
        raise ConfigInvalid(f"need 1 <= kf_min <= kf_max, got {config.kf_min}..{config.kf_max}")

    rng = np.random.default_rng(config.seed)
    cases: list[SuiteCase] = []
    oracle_left = config.oracle_count
    for index in range(config.count):
        n = int(rng.integers(1, config.n_max + 1))
        m = int(rng.integers(1, config.m_max + 1))
        k_f = int(rng.integers(config.kf_min, config.kf_max + 1))
        instance_seed = int(rng.integers(0, 2**31 - 1))

        with_oracle = oracle_left > 0 and stacked_unknowns(n, m, k_f) <= settings.oracle_max_unknowns
        if with_oracle:
            oracle_left -= 1
        cases.append(SuiteCase(index, instance_seed, n, m, k_f, with_oracle))
    return cases


# =============================================================================
# ОБРАБОТЧИКИ ПРОВЕРОК
# =============================================================================

@dataclass(frozen=True)
class CaseContext:
    case: SuiteCase
    inst: ProblemInstance
    syn: SynthesisResult
    settings: SolverSettings
    params: list[ModeParams]


def _check_identities(ctx: CaseContext) -> list[CheckResult]:
    report = verify_identities(ctx.inst, ctx.syn)
    tol = ctx.settings.identities_tol
    return [CheckResult("identities", report.max_residual(), tol, report.passes(tol))]


def _check_substitution(ctx: CaseContext) -> list[CheckResult]:
    tol = ctx.settings.trajectory_tol
    results = []
    for params in ctx.params:
        report = hamiltonian_residual(ctx.inst, complete_trajectory(ctx.inst, ctx.syn, params))
        results.append(CheckResult("substitution", report.max_residual(), tol, report.passes(tol)))
    return results


def _check_consistency(ctx: CaseContext) -> list[CheckResult]:
    """xp и xpu совпадают на общих индексах 0..k_f−1."""
    results = []
    for params in ctx.params:
        xp = trajectory_xp(ctx.inst, ctx.syn, params)
        xpu = trajectory_xpu(ctx.inst, ctx.syn, params)
        scale = max(1.0, float(np.abs(xp.x).max()), float(np.abs(xp.p).max()))
        gap = max(
            float(np.abs(xp.x[:-1] - xpu.x).max()),
            float(np.abs(xp.p[:-1] - xpu.p).max()),
        ) / scale
        results.append(CheckResult("consistency", gap, CONSISTENCY_TOL, gap <= CONSISTENCY_TOL))
    return results


def _check_oracle(ctx: CaseContext) -> list[CheckResult]:
    if not ctx.case.with_oracle:
        return []
    settings = ctx.settings
    oracle = oracle_null_space(
        ctx.inst, tol=settings.null_space_tol, max_unknowns=settings.oracle_max_unknowns
    )
    comparison = compare_solution_sets(ctx.inst, ctx.syn, oracle=oracle)
    modes = null_space_mode_residual(ctx.inst, ctx.syn, oracle=oracle)
    return [
        CheckResult(
            "oracle",
            comparison.containment_residual,
            settings.containment_tol,
            comparison.passes(settings.containment_tol),
        ),
        CheckResult("decoupling", modes, settings.trajectory_tol, modes <= settings.trajectory_tol),
    ]


CHECK_HANDLERS: dict[str, Callable[[CaseContext], list[CheckResult]]] = {
    "identities": _check_identities,
    "substitution": _check_substitution,
    "consistency": _check_consistency,
    "oracle": _check_oracle,
}


# =============================================================================
# ВЫПОЛНЕНИЕ
# =============================================================================

def run_case(case: SuiteCase, config: SuiteConfig, settings: SolverSettings) -> CaseOutcome:
    """Один случай: генерация, синтез, все обработчики из CHECK_HANDLERS."""
    try:
        inst = generate_instance(
            case.instance_seed,
            case.n,
            case.m,
            case.k_f,
            spectral_radius_target=settings.generator_spectral_radius,
            r_ridge=settings.generator_r_ridge,
        )
        try:
            syn = synthesize(inst, settings)
        except (NoConvergence, NotStabilizing, SingularMatrix) as e:
            logger.info("Case %d skipped: %s: %s", case.index, e.name, e)
            return CaseOutcome(case, STATUS_SKIPPED, message=f"{e.name}: {e}")

        rng = np.random.default_rng(case.instance_seed)
        params = [ModeParams.random_unit(rng, case.n) for _ in range(config.trajectories)]
        ctx = CaseContext(case=case, inst=inst, syn=syn, settings=settings, params=params)

        checks: list[CheckResult] = []
        for name, handler in CHECK_HANDLERS.items():
            logger.debug("Case %d: running %s", case.index, name)
            checks.extend(handler(ctx))

        status = STATUS_PASS if all(check.passed for check in checks) else STATUS_FAIL
        if status == STATUS_FAIL:
            failed = sorted({check.name for check in checks if not check.passed})
            logger.warning("Case %d (seed %d) failed: %s", case.index, case.instance_seed, ", ".join(failed))
        return CaseOutcome(case, status, checks)

    except HamsetError as e:
        logger.error("Case %d error: %s: %s", case.index, e.name, e)
        return CaseOutcome(case, STATUS_ERROR, message=f"{e.name}: {e}")
    except Exception as e:
        logger.exception("Unexpected error in case %d", case.index)
        return CaseOutcome(case, STATUS_ERROR, message=f"{type(e).__name__}: {e}")


def run_suite(config: SuiteConfig, settings: SolverSettings) -> SuiteSummary:
    """Выполняет план в пуле потоков; порядок результатов совпадает с планом."""
    cases = plan_cases(config, settings)
    workers = max(1, config.workers)
    logger.info("Suite started: %d cases, %d workers, seed %d", len(cases), workers, config.seed)

    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="suite") as pool:
        outcomes = list(pool.map(lambda case: run_case(case, config, settings), cases))
    elapsed = time.perf_counter() - started

    summary = SuiteSummary(config=config, outcomes=outcomes, elapsed_seconds=elapsed)
    logger.info(
        "Suite finished in %.2f s: %d pass, %d fail, %d skipped, %d error",
        elapsed,
        summary.count(STATUS_PASS),
        summary.count(STATUS_FAIL),
        summary.count(STATUS_SKIPPED),
        summary.count(STATUS_ERROR),
    )
    return summary
