"""Command-line entry point: simulate, analytic, dual, figures, check.

Exit status is 0 when every recorded check passes, 1 when any check fails and
2 when the scenario cannot be loaded or its outputs cannot be written.
"""

from pathlib import Path
from typing import Optional

import structlog
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .config.scenario import Task, load_scenario
from .config.settings import configure_logging, settings
from .model.interfaces import OrbitError
from .output.files import write_text_atomic
from .pipeline.runner import run_scenario
from .validation.acceptance import run_acceptance_suite
from .validation.interfaces import VerificationReport

logger = structlog.get_logger()

app = typer.Typer(help="Zero-energy orbits of V = -alpha/(r^2 + sigma)^2 and their sphere duals.",
                  no_args_is_help=True)
console = Console()

EXIT_FAILED = 1
EXIT_USAGE = 2

ConfigOption = typer.Option(..., "--config", "-c", help="Scenario JSON file.")
OutOption = typer.Option(None, "--out", "-o", help="Output directory (default from scenario or settings).")
SeedOption = typer.Option(None, "--seed", help="Override the scenario seed.")


def print_report(report: VerificationReport) -> None:
    table = Table(title=f"{report.name}: {'PASS' if report.passed else 'FAIL'}")
    table.add_column("check")
    table.add_column("deviation", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("status")
    for record in report.records:
        op = ">" if record.mode == "above" else "<"
        table.add_row(
            record.check_id,
            f"{record.max_deviation:.3e}",
            f"{op} {record.tolerance:.1e}",
            "[green]ok[/green]" if record.passed else "[red]FAIL[/red]",
        )
    console.print(table)
    if report.files:
        console.print("files: " + ", ".join(report.files))


def _run(config: Path, task: Optional[Task], out: Optional[Path], seed: Optional[int]) -> None:
    configure_logging()
    try:
        scenario = load_scenario(config)
        if task is not None:
            scenario = scenario.restricted_to(task)
        if seed is not None:
            scenario = scenario.with_overrides(seed=seed)
        report = run_scenario(scenario, out_dir=out)
    except (ValidationError, OrbitError, OSError) as e:
        logger.error("scenario_rejected", config=str(config), error=str(e))
        console.print(f"[red]error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)

    print_report(report)
    if not report.passed:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def simulate(config: Path = ConfigOption, out: Optional[Path] = OutOption, seed: Optional[int] = SeedOption):
    """Integrate Hamilton's equations and write simulate.csv."""
    _run(config, Task.SIMULATE, out, seed)


@app.command()
def analytic(config: Path = ConfigOption, out: Optional[Path] = OutOption, seed: Optional[int] = SeedOption):
    """Sample the closed-form zero-energy trajectory and write analytic.csv."""
    _run(config, Task.ANALYTIC, out, seed)


@app.command()
def dual(config: Path = ConfigOption, out: Optional[Path] = OutOption, seed: Optional[int] = SeedOption):
    """Check the sphere and inversion dualities of the scenario orbit."""
    _run(config, Task.DUALITY, out, seed)


@app.command()
def figures(config: Path = ConfigOption, out: Optional[Path] = OutOption, seed: Optional[int] = SeedOption):
    """Render the scenario's figures as SVG."""
    _run(config, Task.FIGURES, out, seed)


@app.command()
def check(
    config: Optional[Path] = typer.Option(None, "--config", "-c", help="Scenario JSON file; omit for the built-in suite."),
    out: Optional[Path] = OutOption,
    seed: Optional[int] = SeedOption,
):
    """Run every task of a scenario, or the built-in acceptance suite."""
    if config is not None:
        _run(config, None, out, seed)
        return

    configure_logging()
    report = run_acceptance_suite(seed=seed)
    target = Path(out or settings.outputs_dir) / "acceptance_report.json"
    report.files.append(target.name)
    try:
        write_text_atomic(target, report.to_json())
    except OSError as e:
        console.print(f"[red]error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE)
    print_report(report)
    if not report.passed:
        raise typer.Exit(EXIT_FAILED)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
