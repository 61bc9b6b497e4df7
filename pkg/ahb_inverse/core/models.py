"""Data models for ahb-inverse."""

import math
from enum import Enum
from typing import Annotated, List, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .stopping import DEFAULT_MAX_ITER


class StepRule(str, Enum):
    CONSTANT = "constant"
    ADAPTIVE = "adaptive"


class StopReason(str, Enum):
    DISCREPANCY = "discrepancy"
    MAX_ITER = "max_iter"
    EXACT_ZERO_RESIDUAL = "exact_zero_residual"
    ABORTED = "aborted"


class SolverConfig(BaseModel):
    """Parameters of the Landweber-type and adaptive heavy ball iterations.

    ``eta`` left unset takes the forward problem's tangential-cone constant.
    """

    model_config = ConfigDict(extra="forbid")

    tau: float = Field(gt=1.0)
    beta_cap: float = Field(default=math.inf, ge=0.0)
    mu0: float = Field(gt=0.0)
    mu1: float = Field(default=100.0, gt=0.0)
    eta: Optional[float] = Field(default=None, ge=0.0, lt=1.0)
    step_rule: StepRule = StepRule.CONSTANT
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=1)
    record_truth_error: bool = True

    @field_validator("beta_cap", mode="before")
    @classmethod
    def _parse_infinite_cap(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
            return math.inf
        return value

    def c0(self, sigma: float) -> float:
        """1 - (1 + eta)/tau - eta - mu0/(4 sigma); positive under the descent hypothesis."""
        eta = self.eta or 0.0
        return 1.0 - (1.0 + eta) / self.tau - eta - self.mu0 / (4.0 * sigma)

    def c1(self, sigma: float) -> float:
        """Exact-data counterpart of c0: 1 - eta - mu0/(4 sigma)."""
        return 1.0 - (self.eta or 0.0) - self.mu0 / (4.0 * sigma)

    def for_problem(self, eta: float) -> "SolverConfig":
        """This config, with ``eta`` filled in from the problem when unset."""
        if self.eta is not None:
            return self
        return self.model_copy(update={"eta": eta})

    def check_feasibility(self, sigma: float) -> float:
        """Return c0, warning (not failing) when the convergence hypotheses are unmet."""
        c0 = self.c0(sigma)
        if c0 <= 0:
            logger.warning(
                f"c0 = {c0:.4g} <= 0 for sigma = {sigma:g}: monotone descent is not guaranteed"
            )
        if not self.beta_cap < 1:
            logger.debug(f"beta_cap = {self.beta_cap:g} >= 1: strong-convergence hypothesis unmet")
        return c0


class NuConfig(BaseModel):
    """Brakhage nu-method parameters. ``gamma`` defaults to gamma_scale / ||A||^2."""

    model_config = ConfigDict(extra="forbid")

    nu: float = Field(default=3.0, gt=0.5)
    gamma: Optional[float] = Field(default=None, gt=0.0)
    gamma_scale: float = Field(default=0.99, gt=0.0, lt=1.0)
    tau: float = Field(gt=1.0)
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=1)
    record_truth_error: bool = True


class NesterovConfig(BaseModel):
    """Nesterov-accelerated Landweber parameters. ``gamma`` defaults to gamma_scale / ||A||^2."""

    model_config = ConfigDict(extra="forbid")

    alpha_shift: float = Field(default=3.0, ge=2.0)
    gamma: Optional[float] = Field(default=None, gt=0.0)
    gamma_scale: float = Field(default=0.99, gt=0.0, lt=1.0)
    tau: float = Field(gt=1.0)
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=1)
    record_truth_error: bool = True


class IterationRow(BaseModel):
    """One iteration of a solver run."""

    n: int
    residual_norm: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma_tilde: float = 0.0
    truth_error: Optional[float] = None
    elapsed: float = 0.0


class RunRecord(BaseModel):
    """Per-iteration log and terminal status of one solver run."""

    method: str
    delta: float
    tau: float
    rows: List[IterationRow] = Field(default_factory=list)
    stop_reason: Optional[StopReason] = None
    n_delta: Optional[int] = None
    message: str = ""
    forward_evals: int = 0
    elapsed_seconds: float = 0.0

    def add_row(self, row: IterationRow) -> None:
        if self.rows and row.n <= self.rows[-1].n:
            raise ValueError(f"iteration rows must increase: {row.n} after {self.rows[-1].n}")
        self.rows.append(row)

    def finish(self, reason: StopReason, n: int, message: str = "") -> None:
        self.stop_reason = reason
        self.n_delta = n if reason == StopReason.DISCREPANCY else None
        self.message = message

    @property
    def iterations(self) -> int:
        return self.rows[-1].n if self.rows else 0

    @property
    def final_error(self) -> Optional[float]:
        return self.rows[-1].truth_error if self.rows else None

    def curve(self) -> List[tuple]:
        """(n, truth_error) pairs for rows with a known error."""
        return [(row.n, row.truth_error) for row in self.rows if row.truth_error is not None]


class SummaryRow(BaseModel):
    """One line of a results table: (method, delta, repeat)."""

    delta: float
    delta_rel: Optional[float] = None
    method: str
    iterations: int
    time_seconds: float
    error: Optional[float] = Field(default=None, ge=0.0)
    stop_reason: str
    seed: int


class AdjointReport(BaseModel):
    """Outcome of a randomized adjoint-consistency check."""

    problem: str
    trials: int
    max_discrepancy: float
    tolerance: float
    passed: bool


class DerivativeReport(BaseModel):
    """Taylor-remainder ratio check for a linearization."""

    epsilon: float
    remainder: float
    remainder_half: float
    ratio: Optional[float] = None
    passed: bool
    message: str = ""


class GlobalConfig(BaseModel):
    """Global configuration from ~/.config/ahb/config.toml."""

    log_level: str = "INFO"
    jobs: int = 1
    out_dir: str = "results"


# ---------------------------------------------------------------------------
# Experiment configuration (TOML)


class FredholmSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Literal["fredholm"] = "fredholm"
    n_nodes: int = Field(default=1000, ge=2)


class TomographySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Literal["tomography"] = "tomography"
    rows: int = Field(default=64, ge=8)
    cols: int = Field(default=64, ge=8)
    n_angles: int = Field(default=30, ge=1)
    n_rays: int = Field(default=95, ge=1)
    geometry: Literal["parallel", "fan"] = "parallel"


class EllipticSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Literal["elliptic"] = "elliptic"
    m: int = Field(default=64, ge=8)
    domain_radius: float = Field(default=10.0, gt=0.0)


ProblemSpec = Annotated[
    Union[FredholmSpec, TomographySpec, EllipticSpec], Field(discriminator="name")
]


class RegularizerSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Literal["quadratic", "tv"] = "quadratic"
    kappa: float = Field(default=1.0, gt=0.0)
    pdhg_iters: int = Field(default=70, ge=1)


class NoiseSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: Literal["absolute", "relative"] = "absolute"
    levels: List[float] = Field(min_length=1)
    seed: int = 0
    repeats: int = Field(default=1, ge=1)

    @field_validator("levels")
    @classmethod
    def _nonnegative(cls, levels: List[float]) -> List[float]:
        if any(level < 0 for level in levels):
            raise ValueError("noise levels must be nonnegative")
        return levels


class OutputSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dir: str = "results"
    images: bool = True
    export_matrix: bool = False


class CurveSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    exact_iterations: int = Field(default=0, ge=0)


METHOD_TITLES = {
    "ahb": "AHB",
    "landweber": "Landweber",
    "nu": "nu-method",
    "nesterov": "Nesterov",
}


class AhbMethodSpec(SolverConfig):
    name: Literal["ahb"] = "ahb"
    label: Optional[str] = None


class LandweberMethodSpec(SolverConfig):
    name: Literal["landweber"] = "landweber"
    label: Optional[str] = None


class NuMethodSpec(NuConfig):
    name: Literal["nu"] = "nu"
    label: Optional[str] = None


class NesterovMethodSpec(NesterovConfig):
    name: Literal["nesterov"] = "nesterov"
    label: Optional[str] = None


MethodSpec = Annotated[
    Union[AhbMethodSpec, LandweberMethodSpec, NuMethodSpec, NesterovMethodSpec],
    Field(discriminator="name"),
]


def method_title(method: Union[AhbMethodSpec, LandweberMethodSpec, NuMethodSpec, NesterovMethodSpec]) -> str:
    return method.label or METHOD_TITLES[method.name]


class ExperimentConfig(BaseModel):
    """A full experiment: one problem, one regularizer, a noise sweep and methods."""

    model_config = ConfigDict(extra="forbid")

    title: str = "experiment"
    problem: ProblemSpec
    regularizer: RegularizerSpec = Field(default_factory=RegularizerSpec)
    noise: NoiseSpec
    methods: List[MethodSpec] = Field(min_length=1)
    output: OutputSpec = Field(default_factory=OutputSpec)
    curves: CurveSpec = Field(default_factory=CurveSpec)
