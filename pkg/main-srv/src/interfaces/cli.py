"""
main-srv/src/interfaces/cli.py

Command-line front end.

Commands:
- solve       synthesis + identity residuals → YAML report
- trajectory  (x, p) or (x, p, u) table for given α, β → CSV
- verify      synthesis, trajectory substitution, optional null-space oracle
- generate    seeded random instance → YAML instance file
- suite       seeded batch verification over many generated instances

Exit status:
- 0  every evaluated residual within tolerance
- 1  verdict fail
- 2  error, printed to stderr as "<ErrorName>: <message>"

Documents go to --output or stdout; diagnostics and logs go to stderr,
so stdout stays byte-deterministic.
"""

__version__ = "1.0.0"
__description__ = "Typer command-line application"

import csv
import io
import logging
import sys
from enum import Enum
from functools import wraps
from pathlib import Path
from typing import Annotated, Callable, Optional

import numpy as np
import typer
from rich.console import Console
from rich.table import Table

from config_manager.config_manager import SolverSettings, load_settings
from exceptions import HamsetError, ParseError
from hamiltonian.models import ModeParams, Trajectory
from hamiltonian.residuals import hamiltonian_residual
from hamiltonian.trajectories import complete_trajectory, trajectory_xp, trajectory_xpu
from interfaces.instance_io import load_instance, save_instance, write_document
from interfaces.run_report import RunReport, render_report
from oracle.comparison import compare_solution_sets, null_space_mode_residual, oracle_null_space
from orchestrator.suite_runner import SuiteConfig, SuiteSummary, run_suite
from synthesis.identities import verify_identities
from synthesis.instance_generator import generate_instance
from synthesis.synthesizer import synthesize
from version import __version__ as project_version

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

#: Формат чисел таблицы траектории.
TABLE_FLOAT_FORMAT: str = ".17g"

app = typer.Typer(
    name="hamset",
    help="Singular discrete-time LQ: synthesis and verification of the Hamiltonian solution set.",
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


class TrajectoryMode(str, Enum):
    xp = "xp"
    xpu = "xpu"


# =============================================================================
# === Общие опции ===
# =============================================================================

InputOption = Annotated[Path, typer.Option("--input", "-i", help="Instance file (YAML).")]
OutputOption = Annotated[
    Optional[Path], typer.Option("--output", "-o", help="Output file; stdout if omitted.")
]
ConfigOption = Annotated[
    Optional[Path], typer.Option("--config", help="Solver configuration YAML.")
]
TolOption = Annotated[
    Optional[float],
    typer.Option("--tol", help="Verification tolerance for identity and trajectory residuals."),
]


def _surface_errors(command: Callable) -> Callable:
    """HamsetError → stderr "<Name>: <message>" и код 2."""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HamsetError as e:
            logger.error("%s failed: %s: %s", command.__name__, e.name, e)
            typer.echo(f"{e.name}: {e}", err=True)
            raise typer.Exit(code=EXIT_ERROR)
    return wrapper


def _load_settings(config_path: Path | None, tol: float | None = None) -> SolverSettings:
    if config_path is None:
        settings = SolverSettings()
    else:
        try:
            settings = load_settings(config_path)
        except HamsetError:
            raise
        except FileNotFoundError as e:
            raise ParseError(str(e)) from e
        except Exception as e:
            raise ParseError(f"{config_path}: invalid configuration ({e})") from e
    return settings.with_verification_tol(tol)


def parse_vector(text: str, name: str) -> np.ndarray:
    """'0.5, -1, 2e-3' → массив; пустая строка → пустой массив."""
    items = [item.strip() for item in text.split(",")] if text.strip() else []
    try:
        return np.array([float(item) for item in items], dtype=np.float64)
    except ValueError as e:
        raise ParseError(f"--{name}: expected comma-separated reals, got {text!r}") from e


def _mode_params(alpha: str | None, beta: str | None, n: int, seed: int) -> tuple[ModeParams, str | None]:
    """
    Оба вектора не заданы → случайная пара единичной нормы из seed.
    Задан один → второй нулевой.
    """
    if alpha is None and beta is None:
        rng = np.random.default_rng(seed)
        return ModeParams.random_unit(rng, n), f"alpha, beta drawn as a random unit pair from seed {seed}"
    alpha_vec = parse_vector(alpha, "alpha") if alpha is not None else np.zeros(n)
    beta_vec = parse_vector(beta, "beta") if beta is not None else np.zeros(n)
    return ModeParams.create(alpha_vec, beta_vec, n), None


def _exit_by_verdict(passed: bool) -> None:
    raise typer.Exit(code=EXIT_PASS if passed else EXIT_FAIL)


# =============================================================================
# === Команды ===
# =============================================================================

@app.command()
@_surface_errors
def solve(
    input_path: InputOption,
    output: OutputOption = None,
    tol: TolOption = None,
    config: ConfigOption = None,
) -> None:
    """Synthesize P+, K+, A+, W, K̄+ and write a report with all identity residuals."""
    settings = _load_settings(config, tol)
    inst = load_instance(input_path)
    syn = synthesize(inst, settings)

    report = RunReport(
        command="solve",
        version=project_version,
        instance=inst,
        settings=settings,
        synthesis=syn,
        identities=verify_identities(inst, syn),
    )
    text = write_document(report.to_document(include_matrices=True), output)
    if output is None:
        typer.echo(text, nl=False)
    _exit_by_verdict(report.verdict)


def trajectory_table(traj: Trajectory) -> str:
    """CSV: k, x1..xn, p1..pn[, u1..um], числа в формате %.17g."""
    n = traj.x.shape[1]
    header = ["k"] + [f"x{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
    if traj.u is not None:
        header += [f"u{i + 1}" for i in range(traj.u.shape[1])]

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for k in range(traj.x.shape[0]):
        values = list(traj.x[k]) + list(traj.p[k])
        if traj.u is not None:
            values += list(traj.u[k])
        writer.writerow([k] + [format(float(value), TABLE_FLOAT_FORMAT) for value in values])
    return buffer.getvalue()


@app.command()
@_surface_errors
def trajectory(
    input_path: InputOption,
    alpha: Annotated[str, typer.Option("--alpha", help="α as comma-separated reals (length n).")],
    beta: Annotated[str, typer.Option("--beta", help="β as comma-separated reals (length n).")],
    mode: Annotated[TrajectoryMode, typer.Option("--mode", help="xp: 0..kf, xpu: 0..kf-1.")] = TrajectoryMode.xp,
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Emit the trajectory of the (α, β) parametrization as a k-indexed table."""
    settings = _load_settings(config)
    inst = load_instance(input_path)
    params = ModeParams.create(parse_vector(alpha, "alpha"), parse_vector(beta, "beta"), inst.n)
    syn = synthesize(inst, settings)

    if mode is TrajectoryMode.xpu:
        traj = trajectory_xpu(inst, syn, params)
    else:
        traj = trajectory_xp(inst, syn, params)

    text = trajectory_table(traj)
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
        logger.info("Trajectory table written to %s", output)


@app.command()
@_surface_errors
def verify(
    input_path: InputOption,
    alpha: Annotated[Optional[str], typer.Option("--alpha", help="α as comma-separated reals.")] = None,
    beta: Annotated[Optional[str], typer.Option("--beta", help="β as comma-separated reals.")] = None,
    seed: Annotated[int, typer.Option("--seed", help="Seed for a random unit (α, β) when both are omitted.")] = 0,
    with_oracle: Annotated[bool, typer.Option("--with-oracle", help="Also compare with the null-space oracle.")] = False,
    output: OutputOption = None,
    tol: TolOption = None,
    config: ConfigOption = None,
) -> None:
    """Substitute the (α, β) trajectory into the Hamiltonian system and report the verdict."""
    settings = _load_settings(config, tol)
    inst = load_instance(input_path)
    params, note = _mode_params(alpha, beta, inst.n, seed)
    syn = synthesize(inst, settings)

    report = RunReport(
        command="verify",
        version=project_version,
        instance=inst,
        settings=settings,
        synthesis=syn,
        identities=verify_identities(inst, syn),
        params=params,
        residuals=hamiltonian_residual(inst, complete_trajectory(inst, syn, params)),
    )
    if note:
        report.notes.append(note)

    if with_oracle:
        oracle = oracle_null_space(
            inst, tol=settings.null_space_tol, max_unknowns=settings.oracle_max_unknowns
        )
        report.comparison = compare_solution_sets(inst, syn, oracle=oracle)
        report.null_space_mode_residual = null_space_mode_residual(inst, syn, oracle=oracle)

    render_report(report, Console())
    if output is not None:
        write_document(report.to_document(include_matrices=False), output)
    _exit_by_verdict(report.verdict)


@app.command()
@_surface_errors
def generate(
    seed: Annotated[int, typer.Option("--seed", help="Random seed.")],
    n: Annotated[int, typer.Option("--n", help="State dimension.")],
    m: Annotated[int, typer.Option("--m", help="Input dimension.")],
    kf: Annotated[int, typer.Option("--kf", help="Horizon.")],
    output: OutputOption = None,
    config: ConfigOption = None,
) -> None:
    """Write a seeded random instance; the same seed gives a byte-identical file."""
    settings = _load_settings(config)
    inst = generate_instance(
        seed,
        n,
        m,
        kf,
        spectral_radius_target=settings.generator_spectral_radius,
        r_ridge=settings.generator_r_ridge,
    )
    text = save_instance(inst, output)
    if output is None:
        typer.echo(text, nl=False)


def render_suite(summary: SuiteSummary, console: Console) -> None:
    config = summary.config
    console.print(
        f"[bold]suite[/bold]  seed={config.seed}  cases={len(summary.outcomes)}  "
        f"workers={config.workers}  elapsed={summary.elapsed_seconds:.2f} s"
    )
    table = Table(title="Worst residual per check")
    table.add_column("check")
    table.add_column("worst", justify="right")
    for name in summary.check_names():
        table.add_row(name, f"{summary.worst(name):.3e}")
    console.print(table)

    console.print(
        f"pass={summary.count('pass')}  fail={summary.count('fail')}  "
        f"skipped={summary.count('skipped')}  error={summary.count('error')}"
    )
    for outcome in summary.outcomes:
        if outcome.status in ("fail", "error"):
            case = outcome.case
            failed = ", ".join(sorted({c.name for c in outcome.checks if not c.passed})) or outcome.message
            console.print(
                f"[red]{outcome.status}[/red] case {case.index} seed={case.instance_seed} "
                f"n={case.n} m={case.m} kf={case.k_f}: {failed}"
            )
    verdict = "[bold green]PASS[/bold green]" if summary.verdict else "[bold red]FAIL[/bold red]"
    console.print(f"verdict: {verdict}")


@app.command()
@_surface_errors
def suite(
    count: Annotated[int, typer.Option("--count", help="Number of generated instances.")] = 100,
    seed: Annotated[int, typer.Option("--seed", help="Suite seed.")] = 0,
    n_max: Annotated[int, typer.Option("--n-max", help="Largest state dimension.")] = 5,
    m_max: Annotated[int, typer.Option("--m-max", help="Largest input dimension.")] = 3,
    kf_min: Annotated[int, typer.Option("--kf-min", help="Shortest horizon.")] = 2,
    kf_max: Annotated[int, typer.Option("--kf-max", help="Longest horizon.")] = 12,
    trajectories: Annotated[int, typer.Option("--trajectories", help="Random unit (α, β) per instance.")] = 5,
    oracle_count: Annotated[int, typer.Option("--oracle-count", help="Instances checked against the oracle.")] = 30,
    workers: Annotated[int, typer.Option("--workers", help="Worker threads.")] = 4,
    tol: TolOption = None,
    config: ConfigOption = None,
) -> None:
    """Run identity, substitution and oracle checks over seeded random instances."""
    settings = _load_settings(config, tol)
    suite_config = SuiteConfig(
        count=count,
        seed=seed,
        n_max=n_max,
        m_max=m_max,
        kf_min=kf_min,
        kf_max=kf_max,
        trajectories=trajectories,
        oracle_count=oracle_count,
        workers=workers,
    )
    summary = run_suite(suite_config, settings)
    render_suite(summary, Console())
    _exit_by_verdict(summary.verdict)


@app.callback(invoke_without_command=True)
def _root(
    ctx: typer.Context,
    version: Annotated[bool, typer.Option("--version", help="Print the version and exit.")] = False,
) -> None:
    if version:
        typer.echo(project_version)
        raise typer.Exit(code=EXIT_PASS)
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        raise typer.Exit(code=EXIT_PASS)


def run() -> None:
    """Точка входа для main.py."""
    app(prog_name="hamset")


if __name__ == "__main__":
    sys.exit(run())
