"""Rich console output utilities."""

import json
from typing import Any, List

from rich.console import Console
from rich.panel import Panel
from rich.syntax import Syntax
from rich.table import Table

from ..api import CheckReport, ExperimentResult
from ..problems import PROBLEMS

console = Console()


def print_success(message: str) -> None:
    """Print success message."""
    console.print(f"✓ {message}", style="bold green")


def print_error(message: str) -> None:
    """Print error message."""
    console.print(f"✗ {message}", style="bold red")


def print_info(message: str) -> None:
    """Print info message."""
    console.print(f"ℹ {message}", style="bold blue")


def print_warning(message: str) -> None:
    """Print warning message."""
    console.print(f"⚠ {message}", style="bold yellow")


def print_json(data: Any) -> None:
    """Print data as formatted JSON."""
    json_str = json.dumps(data, indent=2, default=str)
    syntax = Syntax(json_str, "json", theme="monokai", line_numbers=False)
    console.print(syntax)


def print_skipped(skipped: List[str]) -> None:
    for issue in skipped:
        print_warning(f"Skipped: {issue}")


def print_summary(result: ExperimentResult, as_json: bool = False) -> None:
    """Print the results table of an experiment."""
    if as_json:
        print_json(
            {
                "title": result.title,
                "out_dir": result.out_dir,
                "summary": [row.model_dump() for row in result.summary],
                "skipped": result.skipped,
                "exit_code": result.exit_code,
            }
        )
        return

    print_skipped(result.skipped)
    if not result.summary:
        print_error("No runs were executed")
        return

    relative = any(row.delta_rel is not None for row in result.summary)
    table = Table(title=result.title, show_header=True, header_style="bold magenta")
    table.add_column("δ_rel" if relative else "δ", justify="right", style="cyan")
    table.add_column("Method")
    table.add_column("Iterations", justify="right", style="green")
    table.add_column("Time (s)", justify="right", style="dim")
    table.add_column("Error", justify="right")
    table.add_column("Stop", style="dim")
    table.add_column("Seed", justify="right", style="dim")

    for row in result.summary:
        level = row.delta_rel if relative else row.delta
        stop_style = "" if row.stop_reason == "discrepancy" else "[yellow]"
        table.add_row(
            f"{level:g}",
            row.method,
            str(row.iterations),
            f"{row.time_seconds:.3f}",
            "-" if row.error is None else f"{row.error:.4e}",
            f"{stop_style}{row.stop_reason}",
            str(row.seed),
        )

    console.print(table)
    console.print(f"\n💾 [dim]Results written to {result.out_dir}[/]\n")


def print_problems(as_json: bool = False) -> None:
    """Print the built-in problem catalogue."""
    if as_json:
        print_json(
            [
                {
                    "name": info.name,
                    "description": info.description,
                    "linear": info.linear,
                    "image_valued": info.image_valued,
                    "error": info.error_kind,
                }
                for info in PROBLEMS.values()
            ]
        )
        return

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Name", style="cyan")
    table.add_column("Description")
    table.add_column("Linear", justify="center")
    table.add_column("Image", justify="center")
    table.add_column("Error", style="dim")
    for info in PROBLEMS.values():
        table.add_row(
            info.name,
            info.description,
            "yes" if info.linear else "no",
            "yes" if info.image_valued else "no",
            info.error_kind,
        )
    console.print(table)


def print_check_report(report: CheckReport, issues: List[str], as_json: bool = False) -> None:
    """Print adjoint/derivative self-test results."""
    if as_json:
        print_json({**report.model_dump(), "passed": report.passed, "unsupported": issues})
        return

    adjoint = report.adjoint
    status = "[green]passed[/]" if adjoint.passed else "[red]FAILED[/]"
    content = f"""[bold]Problem:[/] {report.problem}
[bold]Adjoint trials:[/] {adjoint.trials}
[bold]Max discrepancy:[/] {adjoint.max_discrepancy:.3e} (tolerance {adjoint.tolerance:.0e})
[bold]Adjoint test:[/] {status}"""

    if report.derivatives:
        ratios = [d.ratio for d in report.derivatives if d.ratio is not None]
        failed = sum(not d.passed for d in report.derivatives)
        content += f"\n[bold]Taylor tests:[/] {len(report.derivatives) - failed}/{len(report.derivatives)} passed"
        if ratios:
            content += f"\n[bold]Remainder ratios:[/] {min(ratios):.3f} to {max(ratios):.3f}"

    border = "green" if report.passed and not issues else "red"
    console.print(Panel(content, title="Self-check", border_style=border))
    for issue in issues:
        print_warning(f"Unsupported: {issue}")
