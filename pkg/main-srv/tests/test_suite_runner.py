"""
main-srv/tests/test_suite_runner.py

Seeded batch properties over generated instances.
"""

import pytest

from config_manager.config_manager import SolverSettings
from exceptions import ConfigInvalid
from orchestrator.suite_runner import (
    CHECK_HANDLERS,
    STATUS_PASS,
    STATUS_SKIPPED,
    SuiteConfig,
    plan_cases,
    run_suite,
)


@pytest.fixture(scope="module")
def full_suite():
    """100 экземпляров, n ≤ 5, m ≤ 3, k_f ∈ [2, 12], 5 пар (α, β), 30 с оракулом."""
    return run_suite(SuiteConfig(seed=2024), SolverSettings())


def test_plan_is_deterministic():
    settings = SolverSettings()
    assert plan_cases(SuiteConfig(seed=9), settings) == plan_cases(SuiteConfig(seed=9), settings)
    assert plan_cases(SuiteConfig(seed=9), settings) != plan_cases(SuiteConfig(seed=10), settings)


def test_plan_respects_ranges_and_oracle_budget():
    settings = SolverSettings()
    cases = plan_cases(SuiteConfig(), settings)
    assert len(cases) == 100
    assert all(1 <= c.n <= 5 and 1 <= c.m <= 3 and 2 <= c.k_f <= 12 for c in cases)
    assert sum(c.with_oracle for c in cases) == 30


def test_plan_rejects_bad_ranges():
    with pytest.raises(ConfigInvalid):
        plan_cases(SuiteConfig(kf_min=0), SolverSettings())


def test_full_suite_passes(full_suite):
    failed = [o for o in full_suite.outcomes if o.status not in (STATUS_PASS, STATUS_SKIPPED)]
    assert not failed, [(o.case, o.message, [c for c in o.checks if not c.passed]) for o in failed]
    assert full_suite.verdict


def test_full_suite_evaluates_most_instances(full_suite):
    assert full_suite.count(STATUS_PASS) >= 90


def test_full_suite_thresholds(full_suite):
    assert full_suite.worst("identities") <= 1e-8
    assert full_suite.worst("substitution") <= 1e-8
    assert full_suite.worst("consistency") <= 1e-12
    assert full_suite.worst("oracle") <= 1e-7
    assert full_suite.worst("decoupling") <= 1e-8


def test_every_handler_contributes(full_suite):
    assert set(full_suite.check_names()) == {"identities", "substitution", "consistency", "oracle", "decoupling"}
    assert set(CHECK_HANDLERS) == {"identities", "substitution", "consistency", "oracle"}


def test_outcomes_keep_plan_order_across_worker_counts():
    settings = SolverSettings()
    serial = run_suite(SuiteConfig(count=8, seed=3, oracle_count=2, workers=1), settings)
    parallel = run_suite(SuiteConfig(count=8, seed=3, oracle_count=2, workers=4), settings)
    assert [o.case for o in serial.outcomes] == [o.case for o in parallel.outcomes]
    assert [[c.value for c in o.checks] for o in serial.outcomes] == \
        [[c.value for c in o.checks] for o in parallel.outcomes]
