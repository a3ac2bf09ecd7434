"""
main-srv/tests/test_config_manager.py

Solver settings: defaults, YAML mapping, range validation.
"""

import pytest

from config_manager.config_manager import SolverSettings, load_settings
from exceptions import ConfigInvalid


def test_shipped_config_matches_defaults():
    assert load_settings() == SolverSettings()


def test_from_config_reads_sections_and_keeps_defaults():
    settings = SolverSettings.from_config({"synthesis": {"dare_max_iter": 7}, "oracle": {"null_space_tol": 1e-8}})
    assert settings.dare_max_iter == 7
    assert isinstance(settings.dare_max_iter, int)
    assert settings.null_space_tol == 1e-8
    assert settings.dare_tol == SolverSettings().dare_tol


@pytest.mark.parametrize(
    "field, value",
    [
        ("dare_tol", 0.0),
        ("dare_tol", -1e-12),
        ("dare_max_iter", 0),
        ("lyapunov_tol", -1.0),
        ("sym_tol", 0.0),
        ("psd_tol", -1e-9),
        ("null_space_tol", 0.0),
        ("oracle_max_unknowns", 0),
        ("generator_spectral_radius", 0.0),
        ("lyapunov_direct_max_n", -1),
        ("generator_r_ridge", -1e-6),
    ],
)
def test_out_of_range_settings_are_rejected(field, value):
    with pytest.raises(ConfigInvalid, match=field):
        SolverSettings(**{field: value})


def test_non_positive_tolerance_in_config_is_rejected():
    with pytest.raises(ConfigInvalid):
        SolverSettings.from_config({"synthesis": {"dare_tol": 0}})


def test_verification_tolerance_override_is_not_range_checked():
    settings = SolverSettings().with_verification_tol(-1.0)
    assert settings.identities_tol == -1.0
    assert settings.trajectory_tol == -1.0
