"""Main CLI entry point for ahb."""

import sys
from typing import Optional

import click
from loguru import logger
from pydantic import ValidationError

from .. import __version__
from ..api import ExperimentRunner
from ..core import AhbError, ConfigLoader, ExperimentConfig
from .output import console, print_error

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>"


def configure_logging(verbose: bool = False) -> None:
    """Replace loguru's default sink with the CLI's stderr sink."""
    level = "DEBUG" if verbose else ConfigLoader.load_global_config().log_level
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level)


configure_logging()


@click.group()
@click.version_option(version=__version__, prog_name="ahb")
def cli():
    """
    Adaptive heavy ball iterative regularization for ill-posed inverse problems.

    Run 'ahb init' to write an experiment template, or 'ahb reproduce-table1'
    to run a built-in sweep.
    """
    pass


from .commands.init import init as init_command  # noqa: E402

cli.add_command(init_command, name="init")


def apply_overrides(
    config: ExperimentConfig,
    seed: Optional[int] = None,
    out: Optional[str] = None,
    max_iter: Optional[int] = None,
) -> ExperimentConfig:
    """Command-line overrides on a validated configuration."""
    if seed is not None:
        config = config.model_copy(update={"noise": config.noise.model_copy(update={"seed": seed})})
    if out is not None:
        config = config.model_copy(update={"output": config.output.model_copy(update={"dir": out})})
    if max_iter is not None:
        if max_iter < 1:
            raise click.BadParameter("--max-iter must be positive")
        methods = [m.model_copy(update={"max_iter": max_iter}) for m in config.methods]
        config = config.model_copy(update={"methods": methods})
    return config


def run_options(func):
    """Options shared by every command that executes a sweep."""
    decorators = [
        click.option("--seed", type=int, help="Override the noise seed"),
        click.option("--out", type=click.Path(file_okay=False), help="Output directory"),
        click.option("--jobs", type=int, help="Number of concurrent runs"),
        click.option("--max-iter", type=int, help="Override every method's iteration cap"),
        click.option("--verbose", "-v", is_flag=True, help="Show per-iteration diagnostics"),
        click.option("--json", "as_json", is_flag=True, help="Output as JSON"),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def execute(config: ExperimentConfig, seed, out, jobs, max_iter, verbose, as_json) -> None:
    from .output import print_summary

    config = apply_overrides(config, seed=seed, out=out, max_iter=max_iter)
    runner = ExperimentRunner(config, jobs=jobs)

    if not as_json:
        console.print(
            f"Running [cyan]{config.title}[/]: {len(config.methods)} methods x "
            f"{len(config.noise.levels)} noise levels x {config.noise.repeats} repeats"
        )

    result = runner.run_experiment()
    print_summary(result, as_json=as_json)
    if result.exit_code != 0:
        sys.exit(result.exit_code)


def handle_errors(verbose: bool, error: Exception) -> None:
    if isinstance(error, FileNotFoundError):
        print_error(str(error))
        console.print("\n💡 [dim]Run 'ahb init' to create an experiment configuration[/]\n")
    elif isinstance(error, (AhbError, ValidationError)):
        print_error(str(error))
    else:
        print_error(f"Error: {error}")
    if verbose:
        logger.exception("Detailed error:")
    sys.exit(1)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Experiment TOML file")
@run_options
def run(config_path, seed, out, jobs, max_iter, verbose, as_json):
    """Run an experiment configuration."""
    if verbose:
        configure_logging(verbose=True)

    try:
        config = ConfigLoader.load_experiment(config_path)
        execute(config, seed, out, jobs, max_iter, verbose, as_json)
    except Exception as e:
        handle_errors(verbose, e)


@cli.command(name="list-problems")
@click.option("--json", "as_json", is_flag=True, help="Output as JSON")
def list_problems(as_json):
    """List the built-in forward problems."""
    from .output import print_problems

    print_problems(as_json=as_json)


@cli.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Experiment TOML file")
@click.option("--trials", type=int, default=100, show_default=True, help="Random adjoint pairs")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the random tests")
@click.option("--verbose", "-v", is_flag=True, help="Show detailed progress")
@click.option("--json", "as_json", is_flag=True, help="Output as JSON")
def check(config_path, trials, seed, verbose, as_json):
    """Validate a configuration and run adjoint/derivative self-tests."""
    from .output import print_check_report

    if verbose:
        configure_logging(verbose=True)

    try:
        config = ConfigLoader.load_experiment(config_path)
        runner = ExperimentRunner(config)
        issues = runner.validate_combinations()
        report = runner.self_check(trials=trials, seed=seed)
        print_check_report(report, issues, as_json=as_json)
        if not report.passed or issues:
            sys.exit(1)
    except Exception as e:
        handle_errors(verbose, e)


def _reproduce_command(number: int):
    @run_options
    def command(seed, out, jobs, max_iter, verbose, as_json):
        if verbose:
            configure_logging(verbose=True)
        try:
            execute(ConfigLoader.builtin_table(number), seed, out, jobs, max_iter, verbose, as_json)
        except Exception as e:
            handle_errors(verbose, e)

    command.__doc__ = f"Run the built-in sweep reproducing results table {number}."
    return click.command(name=f"reproduce-table{number}")(command)


for _number in (1, 2, 3):
    cli.add_command(_reproduce_command(_number))


if __name__ == "__main__":
    cli()
