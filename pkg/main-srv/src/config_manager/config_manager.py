"""/main-srv/src/config_manager/config_manager.py"""

__version__ = "1.0.0"
__description__ = "Solver configuration loading (tolerances, limits, generator parameters)"


import yaml
import logging
from pathlib import Path
from dataclasses import dataclass, fields, replace
from typing import Any

from exceptions import ConfigInvalid


# Логгер для этого модуля
logger = logging.getLogger(__name__)


# ============================================================================
# === Загрузка YAML ===
# ============================================================================

def load_solver_config(config_path: str | Path | None = None) -> dict:
    """
    Loads solver configuration from file
    Args:
        config_path: Path to configuration file (optional)
    Returns:
        dict: Dictionary with solver configuration sections
    Raises:
        FileNotFoundError: If configuration file not found
        Exception: On YAML parsing error
    """
    # Определяем путь к конфигу
    if config_path is None:
        config_file_path = Path(__file__).parent.parent.parent / "configs" / "solver_config.yaml"
    else:
        config_file_path = Path(config_path)

    logger.debug(f"Loading solver configuration from: {config_file_path}")

    # Проверка существования файла
    if not config_file_path.exists():
        error_msg = f"Solver configuration file not found: {config_file_path}"
        logger.error(error_msg)
        raise FileNotFoundError(error_msg)

    # Загрузка и парсинг YAML
    try:
        with config_file_path.open('r', encoding='utf-8') as f:
            config_data = yaml.safe_load(f) or {}

        logger.info(f"Solver configuration successfully loaded from: {config_file_path}")
        return config_data

    except Exception as e:
        logger.error(f"Error loading solver configuration: {e}")
        raise


# ============================================================================
# === Типизированные настройки ===
# ============================================================================

# Соответствие поле dataclass → (секция YAML, ключ)
_CONFIG_KEYS: dict[str, tuple[str, str]] = {
    "dare_tol": ("synthesis", "dare_tol"),
    "dare_max_iter": ("synthesis", "dare_max_iter"),
    "lyapunov_tol": ("synthesis", "lyapunov_tol"),
    "lyapunov_direct_max_n": ("synthesis", "lyapunov_direct_max_n"),
    "lyapunov_max_terms": ("synthesis", "lyapunov_max_terms"),
    "sym_tol": ("checks", "sym_tol"),
    "psd_tol": ("checks", "psd_tol"),
    "identities_tol": ("verification", "identities"),
    "trajectory_tol": ("verification", "trajectory"),
    "containment_tol": ("verification", "oracle_containment"),
    "null_space_tol": ("oracle", "null_space_tol"),
    "oracle_max_unknowns": ("oracle", "max_unknowns"),
    "generator_spectral_radius": ("generator", "spectral_radius"),
    "generator_r_ridge": ("generator", "r_ridge"),
}

# Численные допуски и пределы, которые обязаны быть строго положительными
_POSITIVE_FIELDS: tuple[str, ...] = (
    "dare_tol",
    "dare_max_iter",
    "lyapunov_tol",
    "lyapunov_max_terms",
    "sym_tol",
    "psd_tol",
    "null_space_tol",
    "oracle_max_unknowns",
    "generator_spectral_radius",
)
_NON_NEGATIVE_FIELDS: tuple[str, ...] = ("lyapunov_direct_max_n", "generator_r_ridge")


@dataclass(frozen=True)
class SolverSettings:
    """
    Неизменяемый набор допусков и пределов.

    Значения по умолчанию совпадают с configs/solver_config.yaml,
    поэтому библиотеку можно использовать без файла конфигурации.
    """
    dare_tol: float = 1e-12
    dare_max_iter: int = 10000
    lyapunov_tol: float = 1e-12
    lyapunov_direct_max_n: int = 30
    lyapunov_max_terms: int = 100000
    sym_tol: float = 1e-10
    psd_tol: float = 1e-9
    identities_tol: float = 1e-8
    trajectory_tol: float = 1e-8
    containment_tol: float = 1e-7
    null_space_tol: float = 1e-9
    oracle_max_unknowns: int = 2000
    generator_spectral_radius: float = 0.9
    generator_r_ridge: float = 1e-6

    def __post_init__(self) -> None:
        # Допуски вердикта (identities, trajectory, containment) не ограничены
        for name in _POSITIVE_FIELDS:
            value = getattr(self, name)
            if not value > 0:
                logger.error(f"Invalid solver setting {name}={value}")
                raise ConfigInvalid(f"{name} must be positive, got {value}")
        for name in _NON_NEGATIVE_FIELDS:
            value = getattr(self, name)
            if not value >= 0:
                logger.error(f"Invalid solver setting {name}={value}")
                raise ConfigInvalid(f"{name} must be non-negative, got {value}")

    @classmethod
    def from_config(cls, config: dict[str, Any] | None) -> "SolverSettings":
        """
        Строит настройки из словаря load_solver_config().
        Отсутствующие секции и ключи берутся из значений по умолчанию.
        """
        config = config or {}
        values: dict[str, Any] = {}
        for field in fields(cls):
            section, key = _CONFIG_KEYS[field.name]
            raw = (config.get(section) or {}).get(key)
            if raw is None:
                continue
            # int-поля остаются int, остальные приводятся к float
            values[field.name] = int(raw) if field.type in (int, "int") else float(raw)
        return cls(**values)

    def with_verification_tol(self, tol: float | None) -> "SolverSettings":
        """Переопределяет допуски вердикта значением флага --tol."""
        if tol is None:
            return self
        return replace(self, identities_tol=tol, trajectory_tol=tol)


def load_settings(config_path: str | Path | None = None) -> SolverSettings:
    """Загружает YAML и сразу возвращает SolverSettings."""
    return SolverSettings.from_config(load_solver_config(config_path))
