"""API client for ahb-inverse: run experiments and write their artifacts."""

import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from ..core import (
    AdjointReport,
    ConfigLoader,
    DerivativeReport,
    ExperimentConfig,
    GridVector,
    RunRecord,
    StopReason,
    SummaryRow,
    UnsupportedCombinationError,
    adjoint_consistency,
    add_noise_exact,
    add_noise_relative,
)
from ..core import export
from ..core.interfaces import Regularizer
from ..core.models import method_title
from ..problems import PROBLEMS, EllipticProblem, MatrixProblem, ProblemSetup, build_problem
from ..problems import build_regularizer, elliptic_derivative_check
from ..solvers import ahb_solve, landweber_solve, nesterov_solve, nu_method_solve

LINEAR_ONLY_METHODS = ("nu", "nesterov")
DERIVATIVE_CHECKS = 20


class RunResult(BaseModel):
    """One solver run inside a sweep."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    method: str
    delta: float
    delta_rel: Optional[float] = None
    seed: int
    record: RunRecord
    reconstruction: Optional[np.ndarray] = Field(default=None, exclude=True)


class ExperimentResult(BaseModel):
    """Outcome of run_experiment."""

    title: str
    out_dir: str
    summary: List[SummaryRow] = Field(default_factory=list)
    runs: List[RunResult] = Field(default_factory=list)
    exact_runs: List[RunResult] = Field(default_factory=list)
    skipped: List[str] = Field(default_factory=list)
    files: List[str] = Field(default_factory=list)

    @property
    def all_discrepancy(self) -> bool:
        return all(run.record.stop_reason == StopReason.DISCREPANCY for run in self.runs)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_discrepancy and not self.skipped else 1


class CheckReport(BaseModel):
    """Adjoint and derivative self-tests of a configured problem."""

    problem: str
    adjoint: AdjointReport
    derivatives: List[DerivativeReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.adjoint.passed and all(d.passed for d in self.derivatives)


def slugify(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


class ExperimentRunner:
    """High-level API for running one experiment configuration."""

    def __init__(
        self,
        config: ExperimentConfig,
        out_dir: Optional[str] = None,
        jobs: Optional[int] = None,
    ):
        """
        Initialize an experiment runner.

        Args:
            config: Validated experiment configuration
            out_dir: Output directory (defaults to config.output.dir)
            jobs: Number of concurrent runs (defaults to the global config)
        """
        self.config = config
        self.global_config = ConfigLoader.load_global_config()
        self.out_dir = Path(out_dir or config.output.dir)
        self.jobs = max(1, jobs or self.global_config.jobs)
        self._setup: Optional[ProblemSetup] = None

    @classmethod
    def from_file(cls, path: str, **kwargs) -> "ExperimentRunner":
        return cls(ConfigLoader.load_experiment(path), **kwargs)

    @property
    def setup(self) -> ProblemSetup:
        if self._setup is None:
            logger.info(f"Building {self.config.problem.name} problem")
            self._setup = build_problem(self.config.problem)
        return self._setup

    def unsupported_reason(self, method) -> Optional[str]:
        """Why ``method`` cannot run on the configured problem and regularizer, or None."""
        info = PROBLEMS[self.config.problem.name]
        reg_name = self.config.regularizer.name
        if reg_name == "tv" and not info.image_valued:
            return "total variation needs an image-valued parameter"
        if method.name in LINEAR_ONLY_METHODS:
            if not info.linear:
                return f"{info.name} problem is nonlinear"
            if reg_name != "quadratic":
                return "needs the quadratic regularizer"
        return None

    def validate_combinations(self) -> List[str]:
        """Describe every method that cannot run on this problem/regularizer; empty if all can."""
        issues = []
        for method in self.config.methods:
            reason = self.unsupported_reason(method)
            if reason is not None:
                issues.append(f"{method_title(method)}: {reason}")
        return issues

    def _noisy_data(self, level: float, seed: int) -> Tuple[GridVector, float, Optional[float]]:
        exact = self.setup.exact_data
        if self.config.noise.mode == "relative":
            y_delta, delta = add_noise_relative(exact, level, seed)
            return y_delta, delta, level
        return add_noise_exact(exact, level, seed), level, None

    def _solve(
        self, method, reg: Regularizer, y_delta: GridVector, delta: float
    ) -> Tuple[GridVector, RunRecord]:
        prob, truth = self.setup.problem, self.setup.truth
        title = method_title(method)
        if method.name == "ahb":
            return ahb_solve(prob, reg, y_delta, delta, prob.param_zeros(), method, truth, method=title)
        if method.name == "landweber":
            return landweber_solve(
                prob, reg, y_delta, delta, prob.param_zeros(), method, truth, method=title
            )
        if method.name == "nu":
            return nu_method_solve(prob, y_delta, delta, method, truth, reg, method=title)
        if method.name == "nesterov":
            return nesterov_solve(prob, y_delta, delta, method, truth, reg, method=title)
        raise UnsupportedCombinationError(f"unknown method: {method.name}")

    def _execute(self, tasks: List[Callable[[], RunResult]]) -> List[RunResult]:
        if self.jobs == 1 or len(tasks) <= 1:
            return [task() for task in tasks]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(lambda task: task(), tasks))

    def run_experiment(self, write: bool = True) -> ExperimentResult:
        """
        Run every supported method over the noise sweep.

        Args:
            write: Write summary, logs, images and curves under out_dir

        Returns:
            ExperimentResult; ``exit_code`` is nonzero unless every run stopped by
            the discrepancy principle and no combination was skipped
        """
        cfg = self.config
        result = ExperimentResult(title=cfg.title, out_dir=str(self.out_dir))

        result.skipped = self.validate_combinations()
        for issue in result.skipped:
            logger.warning(f"Skipping unsupported combination: {issue}")
        methods = [m for m in cfg.methods if self.unsupported_reason(m) is None]
        if not methods:
            logger.error("No runnable method/problem/regularizer combination")
            return result

        base_reg = build_regularizer(cfg.regularizer, self.setup.problem)

        tasks = []
        for level_index, level in enumerate(cfg.noise.levels):
            for repeat in range(cfg.noise.repeats):
                seed = cfg.noise.seed + repeat
                y_delta, delta, delta_rel = self._noisy_data(level, seed)
                for method in methods:
                    name = f"{slugify(method_title(method))}__delta{level_index}__seed{seed}"
                    tasks.append(
                        self._task(name, method, base_reg, y_delta, delta, delta_rel, seed)
                    )

        result.runs = self._execute(tasks)
        result.summary = [
            SummaryRow(
                delta=run.delta,
                delta_rel=run.delta_rel,
                method=run.method,
                iterations=run.record.iterations,
                time_seconds=run.record.elapsed_seconds,
                error=run.record.final_error,
                stop_reason=run.record.stop_reason.value,
                seed=run.seed,
            )
            for run in result.runs
        ]

        if cfg.curves.exact_iterations > 0:
            exact_tasks = []
            for method in methods:
                limited = method.model_copy(update={"max_iter": cfg.curves.exact_iterations})
                name = f"{slugify(method_title(method))}__exact"
                exact_tasks.append(
                    self._task(name, limited, base_reg, self.setup.exact_data, 0.0, None, cfg.noise.seed)
                )
            result.exact_runs = self._execute(exact_tasks)

        if write:
            self.write_outputs(result)
        return result

    def _task(self, name, method, base_reg, y_delta, delta, delta_rel, seed):
        def run() -> RunResult:
            x, record = self._solve(method, base_reg.fresh(), y_delta, delta)
            return RunResult(
                name=name,
                method=method_title(method),
                delta=delta,
                delta_rel=delta_rel,
                seed=seed,
                record=record,
                reconstruction=x.values.copy(),
            )

        return run

    def write_outputs(self, result: ExperimentResult) -> List[str]:
        """Summary, timings, per-run logs, images, optional matrix export and curves."""
        out = self.out_dir
        files = [
            export.write_summary(out / "summary.csv", result.summary),
            export.write_timings(out / "timings.csv", result.summary),
        ]
        for run in result.runs:
            files.append(export.write_iteration_log(out / "runs" / f"{run.name}.csv", run.record))

        prob, truth = self.setup.problem, self.setup.truth
        if self.config.output.images and prob.image_shape is not None:
            files.extend(self._write_images(result))

        if self.config.output.export_matrix:
            if isinstance(prob, MatrixProblem):
                files.append(export.write_coo(out / "matrix.coo.csv", prob.matrix))
            else:
                logger.warning(f"{prob.name} has no explicit matrix to export")

        files.extend(self.emit_convergence_curves(result))
        result.files = [str(f) for f in files]
        logger.info(f"Wrote {len(files)} files to {out}")
        return result.files

    def _write_images(self, result: ExperimentResult) -> List[Path]:
        shape = self.setup.problem.image_shape
        truth = self.setup.truth.values.reshape(shape)
        low, high = float(truth.min()), float(truth.max())
        images = self.out_dir / "images"
        files = [
            export.write_pgm(images / "truth.pgm", truth, low, high),
            export.write_image_csv(images / "truth.csv", truth),
        ]
        for run in result.runs:
            if run.reconstruction is None:
                continue
            image = run.reconstruction.reshape(shape)
            files.append(export.write_pgm(images / f"{run.name}.pgm", image, low, high))
            files.append(export.write_image_csv(images / f"{run.name}.csv", image))
        return files

    def emit_convergence_curves(self, result: ExperimentResult) -> List[Path]:
        """Write (n, error) series for every noisy and exact-data run with a known truth."""
        files = []
        for run in result.runs + result.exact_runs:
            points = run.record.curve()
            if not points:
                logger.warning(f"No truth error recorded for {run.name}; curve omitted")
                continue
            files.append(export.write_curve(self.out_dir / "curves" / f"{run.name}.csv", points))
        return files

    def self_check(self, trials: int = 100, tolerance: float = 1e-9, seed: int = 0) -> CheckReport:
        """Adjoint consistency at the truth, plus Taylor tests for nonlinear problems."""
        prob, truth = self.setup.problem, self.setup.truth
        report = CheckReport(
            problem=prob.name,
            adjoint=adjoint_consistency(prob, truth, trials=trials, seed=seed, tolerance=tolerance),
        )

        if isinstance(prob, EllipticProblem):
            rng = np.random.default_rng(seed)
            for _ in range(DERIVATIVE_CHECKS):
                c = truth.like(truth.values + rng.uniform(0.0, 1.0, truth.shape))
                h = truth.like(rng.standard_normal(truth.shape))
                report.derivatives.append(elliptic_derivative_check(prob, c, h))

        status = "passed" if report.passed else "FAILED"
        logger.info(
            f"Self-check {prob.name}: adjoint discrepancy {report.adjoint.max_discrepancy:.3g}, {status}"
        )
        return report
