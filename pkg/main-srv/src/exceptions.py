"""
/main-srv/src/exceptions.py

Error hierarchy shared by all hamset packages.

Every error raised on purpose by the library derives from HamsetError,
so the command line can surface it by class name and map it to an exit status.
"""

__version__ = "1.0.0"
__description__ = "Hamset error hierarchy"


class HamsetError(Exception):
    """Базовая ошибка пакета. Имя класса выводится в CLI как код ошибки."""

    @property
    def name(self) -> str:
        return type(self).__name__


# =============================================================================
# === Численные ошибки ===
# =============================================================================

class SingularMatrix(HamsetError):
    """Ведущий элемент LU меньше порога 1e-12·‖M‖_F."""


class SingularInnerMatrix(SingularMatrix):
    """Матрица R + BᵀPB численно вырождена: экземпляр вне допущений метода."""


class NoConvergence(HamsetError):
    """Итерация не сошлась за отведённое число шагов."""


class NotStabilizing(HamsetError):
    """Сошедшееся решение Риккати даёт неустойчивую замкнутую матрицу A+."""


# =============================================================================
# === Ошибки данных ===
# =============================================================================

class InstanceInvalid(HamsetError):
    """Экземпляр задачи нарушает инварианты (симметрия, PSD, размеры)."""


class HorizonTooShort(InstanceInvalid):
    """Операции нужен хотя бы один шаг управления (k_f ≥ 1)."""


class DimensionMismatch(InstanceInvalid):
    """Размерность вектора или матрицы не совпадает с n, m экземпляра."""


class ParseError(HamsetError):
    """Файл экземпляра не читается или не соответствует формату."""


class MissingInput(HamsetError):
    """В траектории нет последовательности u_k."""


class TooLarge(HamsetError):
    """Размер стековой системы превышает предел плотного оракула."""


# =============================================================================
# === Ошибки настроек ===
# =============================================================================

class ConfigInvalid(HamsetError):
    """Допуск, предел или диапазон запуска вне допустимых значений."""
