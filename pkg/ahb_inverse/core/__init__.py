"""Core components for ahb-inverse."""

from .config import ConfigLoader
from .errors import (
    AhbError,
    ConfigurationError,
    DomainError,
    InfeasiblePointError,
    NoiseLevelError,
    UnsupportedCombinationError,
)
from .interfaces import (
    ForwardProblem,
    LinearProblem,
    Regularizer,
    adjoint_consistency,
    bregman_distance,
    estimate_operator_norm,
)
from .models import (
    AdjointReport,
    DerivativeReport,
    ExperimentConfig,
    GlobalConfig,
    IterationRow,
    NesterovConfig,
    NuConfig,
    RunRecord,
    SolverConfig,
    StepRule,
    StopReason,
    SummaryRow,
)
from .spaces import GridVector, add_noise_exact, add_noise_relative, inner, norm
from .stopping import StoppingRule

__all__ = [
    "ConfigLoader",
    "AhbError",
    "ConfigurationError",
    "DomainError",
    "InfeasiblePointError",
    "NoiseLevelError",
    "UnsupportedCombinationError",
    "ForwardProblem",
    "LinearProblem",
    "Regularizer",
    "adjoint_consistency",
    "bregman_distance",
    "estimate_operator_norm",
    "AdjointReport",
    "DerivativeReport",
    "ExperimentConfig",
    "GlobalConfig",
    "IterationRow",
    "NesterovConfig",
    "NuConfig",
    "RunRecord",
    "SolverConfig",
    "StepRule",
    "StopReason",
    "SummaryRow",
    "GridVector",
    "add_noise_exact",
    "add_noise_relative",
    "inner",
    "norm",
    "StoppingRule",
]
