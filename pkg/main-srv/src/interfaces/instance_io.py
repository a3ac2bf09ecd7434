"""
main-srv/src/interfaces/instance_io.py

Instance and report documents.

Format:
- YAML mapping with integer fields n, m, kf and row-major nested arrays
  A (n×n), B (n×m), Q (n×n), R (m×m), S (n×m).
- Reports use the same family: named fields, nested numeric arrays.
- Floats are written with 17 significant digits ('%.16e'), which round-trips
  IEEE double precision exactly; output is byte-deterministic.

Diagnostics:
- YAML syntax errors → ParseError with line and column.
- Missing fields, wrong types, shape mismatches against n, m → ParseError naming the field.
- Symmetry/PSD violations → InstanceInvalid (raised by ProblemInstance.create).
"""

__version__ = "1.0.0"
__description__ = "Instance/report YAML documents"

import logging
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from exceptions import ParseError
from synthesis.models import ProblemInstance

logger = logging.getLogger(__name__)

#: Формат чисел: 17 значащих цифр, всегда с точкой и знаком порядка (YAML 1.1 float).
FLOAT_FORMAT: str = ".16e"


# =============================================================================
# === Модель документа экземпляра ===
# =============================================================================

class InstanceDocument(BaseModel):
    """Схема файла экземпляра."""
    model_config = ConfigDict(extra="forbid")

    n: int
    m: int
    kf: int
    A: list[list[float]]
    B: list[list[float]]
    Q: list[list[float]]
    R: list[list[float]]
    S: list[list[float]]

    @model_validator(mode="after")
    def _check_shapes(self) -> "InstanceDocument":
        if self.n < 1 or self.m < 1:
            raise ValueError(f"n and m must be >= 1, got n={self.n}, m={self.m}")
        expected = {
            "A": (self.n, self.n),
            "B": (self.n, self.m),
            "Q": (self.n, self.n),
            "R": (self.m, self.m),
            "S": (self.n, self.m),
        }
        for name, (rows, cols) in expected.items():
            value = getattr(self, name)
            if len(value) != rows:
                raise ValueError(f"field {name}: expected {rows} rows, got {len(value)}")
            for i, row in enumerate(value):
                if len(row) != cols:
                    raise ValueError(
                        f"field {name}: row {i} has {len(row)} entries, expected {cols}"
                    )
        return self

    def to_instance(self) -> ProblemInstance:
        return ProblemInstance.create(
            A=self.A, B=self.B, Q=self.Q, R=self.R, S=self.S, k_f=self.kf
        )


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "document"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


# =============================================================================
# === YAML с фиксированной точностью ===
# =============================================================================

class _DocumentDumper(yaml.SafeDumper):
    """SafeDumper с 17-значным представлением float."""


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    return dumper.represent_scalar("tag:yaml.org,2002:float", format(value, FLOAT_FORMAT))


_DocumentDumper.add_representer(float, _represent_float)


def _plain(value: Any) -> Any:
    """numpy → встроенные типы Python для YAML."""
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dump_document(document: dict[str, Any]) -> str:
    """Сериализует документ в YAML: матрицы построчно, числа с 17 цифрами."""
    return yaml.dump(
        _plain(document),
        Dumper=_DocumentDumper,
        sort_keys=False,
        default_flow_style=None,
        width=4096,
        allow_unicode=True,
    )


def write_document(document: dict[str, Any], path: str | Path | None) -> str:
    """Пишет документ в файл (если путь задан) и возвращает текст."""
    text = dump_document(document)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("Document written to %s", path)
    return text


# =============================================================================
# === Чтение и запись экземпляров ===
# =============================================================================

def parse_instance_text(text: str, source: str = "<string>") -> ProblemInstance:
    """
    Разбирает текст документа экземпляра.

    Raises:
        ParseError: синтаксис YAML, отсутствующие поля, несогласованные формы.
        InstanceInvalid: нарушены инварианты экземпляра (симметрия, PSD).
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ParseError(f"{source}: YAML syntax error at {where}: {e.problem}") from e
    except yaml.YAMLError as e:
        raise ParseError(f"{source}: YAML error: {e}") from e

    if not isinstance(raw, dict):
        raise ParseError(f"{source}: expected a mapping with fields n, m, kf, A, B, Q, R, S")

    try:
        document = InstanceDocument.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"{source}: {_format_validation_error(e)}") from e

    return document.to_instance()


def load_instance(path: str | Path) -> ProblemInstance:
    """Читает файл экземпляра."""
    file_path = Path(path)
    logger.debug("Loading instance from %s", file_path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{file_path}: cannot read file ({e.strerror})") from e
    instance = parse_instance_text(text, source=str(file_path))
    logger.info("Instance loaded from %s: n=%d, m=%d, kf=%d", file_path, instance.n, instance.m, instance.k_f)
    return instance


def instance_to_document(inst: ProblemInstance) -> dict[str, Any]:
    return {
        "n": inst.n,
        "m": inst.m,
        "kf": inst.k_f,
        "A": inst.A,
        "B": inst.B,
        "Q": inst.Q,
        "R": inst.R,
        "S": inst.S,
    }


def save_instance(inst: ProblemInstance, path: str | Path | None) -> str:
    """Сериализует экземпляр; при path=None только возвращает текст."""
    return write_document(instance_to_document(inst), path)
