"""
/main-srv/src/main.py

Main launch module of hamset.

Sequence:
1. Logging setup
2. Startup record in the log
3. Command-line application (solve, trajectory, verify, generate, suite)
"""

__version__ = "1.0.0"
__description__ = "Main launch module of hamset"

import sys
import logging
from pathlib import Path
from version import __version__ as project_version # Версия проекта
from interfaces.cli import run


def setup_logging(log_dir: Path | None = None, console_level: int = logging.WARNING) -> logging.Logger:
    """
    Настройка глобального логирования.

    Создаёт логгер с двумя handlers:
    - Файловый: DEBUG и выше в logs/hamset_full.log
    - Консольный: WARNING и выше в stderr (stdout занят документами команд)
    """
    if log_dir is None:
        log_dir = Path(__file__).parent.parent / "logs"
    log_dir.mkdir(parents=True, exist_ok=True)

    # Создаем логгер
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    # Форматтер
    formatter = logging.Formatter('[%(asctime)s] %(levelname)-8s | %(name)-15s | %(message)s')

    # 1. Файловый handler - пишет ВСЁ (DEBUG и выше)
    file_handler = logging.FileHandler(log_dir / "hamset_full.log", encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    # 2. Консольный handler - только WARNING и выше
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)

    # Удаляем старые handlers
    logger.handlers.clear()

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)

    return logging.getLogger(__name__)


def main():
    """
    Точка входа проекта.
    Код возврата определяет команда: 0 pass, 1 fail, 2 ошибка.
    """
    logger = setup_logging()
    logger.info(f"Launching hamset version {project_version}: {' '.join(sys.argv[1:])}")

    try:
        run()
    except SystemExit as e:
        logger.info(f"Command finished with exit status {e.code}")
        raise
    except Exception as e:
        logger.critical(f"Unexpected error {e}", exc_info=True)
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2

    return 0

if __name__ == "__main__":
    exit(main())
