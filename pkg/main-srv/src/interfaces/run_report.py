"""
main-srv/src/interfaces/run_report.py

Run report of the solve and verify commands.

Features:
- Collects synthesis diagnostics, identity residuals, Hamiltonian residuals
  and the oracle comparison of one run.
- Each evaluated residual is paired with its configured tolerance; the verdict
  is pass iff every evaluated check passes.
- to_document() produces the YAML report (instance_io family).
- render_report() prints the same content as rich tables.
"""

__version__ = "1.0.0"
__description__ = "Run report and verdict"

import logging
from dataclasses import dataclass, field
from typing import Any

from rich.console import Console
from rich.table import Table

from config_manager.config_manager import SolverSettings
from hamiltonian.models import ModeParams, ResidualReport
from oracle.comparison import SubspaceComparison
from synthesis.models import IdentityReport, ProblemInstance, SynthesisResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckOutcome:
    """Одна проверка: значение, допуск, результат."""
    name: str
    value: float
    tol: float
    passed: bool


@dataclass
class RunReport:
    """Итог одного запуска команды."""
    command: str
    version: str
    instance: ProblemInstance
    settings: SolverSettings
    synthesis: SynthesisResult
    identities: IdentityReport | None = None
    params: ModeParams | None = None
    residuals: ResidualReport | None = None
    comparison: SubspaceComparison | None = None
    null_space_mode_residual: float | None = None
    notes: list[str] = field(default_factory=list)

    def checks(self) -> list[CheckOutcome]:
        """Все вычисленные проверки в фиксированном порядке."""
        settings = self.settings
        outcomes: list[CheckOutcome] = []

        if self.identities is not None:
            for name, value in self.identities.as_dict().items():
                tol = settings.identities_tol
                outcomes.append(CheckOutcome(name, value, tol, value <= tol))

        if self.residuals is not None:
            for name, value in self.residuals.as_dict().items():
                tol = settings.trajectory_tol
                outcomes.append(CheckOutcome(f"hamiltonian_{name}", value, tol, value <= tol))

        if self.comparison is not None:
            comparison = self.comparison
            tol = settings.containment_tol
            outcomes.append(CheckOutcome(
                "containment_residual",
                comparison.containment_residual,
                tol,
                comparison.containment_residual <= tol,
            ))
            outcomes.append(CheckOutcome(
                "dims_match",
                float(comparison.param_rank - comparison.oracle_dim),
                0.0,
                comparison.dims_match,
            ))

        if self.null_space_mode_residual is not None:
            tol = settings.trajectory_tol
            value = self.null_space_mode_residual
            outcomes.append(CheckOutcome("null_space_mode_residual", value, tol, value <= tol))

        return outcomes

    @property
    def verdict(self) -> bool:
        return all(outcome.passed for outcome in self.checks())

    def to_document(self, include_matrices: bool = True) -> dict[str, Any]:
        """Документ отчёта: те же соглашения, что и у файла экземпляра."""
        syn = self.synthesis
        document: dict[str, Any] = {
            "command": self.command,
            "version": self.version,
            "n": self.instance.n,
            "m": self.instance.m,
            "kf": self.instance.k_f,
            "synthesis": {
                "dare_iterations": syn.dare_iterations,
                "dare_residual": syn.dare_residual,
            },
        }
        if include_matrices:
            document["P_plus"] = syn.P_plus
            document["K_plus"] = syn.K_plus
            document["A_plus"] = syn.A_plus
            document["W"] = syn.W
            document["Kbar_plus"] = syn.Kbar_plus

        if self.identities is not None:
            document["identities"] = self.identities.as_dict()
        if self.params is not None:
            document["alpha"] = self.params.alpha
            document["beta"] = self.params.beta
        if self.residuals is not None:
            document["hamiltonian_residuals"] = self.residuals.as_dict()
        if self.comparison is not None:
            document["oracle"] = {
                "oracle_dim": self.comparison.oracle_dim,
                "param_rank": self.comparison.param_rank,
                "containment_residual": self.comparison.containment_residual,
                "dims_match": self.comparison.dims_match,
            }
            if self.null_space_mode_residual is not None:
                document["oracle"]["null_space_mode_residual"] = self.null_space_mode_residual

        document["tolerances"] = {
            "identities": self.settings.identities_tol,
            "trajectory": self.settings.trajectory_tol,
            "oracle_containment": self.settings.containment_tol,
        }
        if self.notes:
            document["notes"] = list(self.notes)
        document["verdict"] = "pass" if self.verdict else "fail"
        return document


# =============================================================================
# === Вывод в консоль ===
# =============================================================================

def _format_value(value: float) -> str:
    return f"{value:.3e}"


def render_report(report: RunReport, console: Console | None = None) -> None:
    """Печатает отчёт таблицами rich."""
    console = console or Console()
    inst, syn = report.instance, report.synthesis

    console.print(
        f"[bold]{report.command}[/bold]  n={inst.n}  m={inst.m}  kf={inst.k_f}  "
        f"DARE iterations={syn.dare_iterations}  DARE residual={_format_value(syn.dare_residual)}"
    )

    table = Table(title="Checks")
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("status")
    for outcome in report.checks():
        if outcome.name == "dims_match":
            comparison = report.comparison
            value = f"{comparison.oracle_dim} vs {comparison.param_rank}"
            tol = "equal"
        else:
            value = _format_value(outcome.value)
            tol = _format_value(outcome.tol)
        status = "[green]pass[/green]" if outcome.passed else "[red]FAIL[/red]"
        table.add_row(outcome.name, value, tol, status)
    console.print(table)

    for note in report.notes:
        console.print(f"[yellow]note:[/yellow] {note}")

    verdict = "[bold green]PASS[/bold green]" if report.verdict else "[bold red]FAIL[/bold red]"
    console.print(f"verdict: {verdict}")
    logger.info("%s verdict: %s", report.command, "pass" if report.verdict else "fail")
