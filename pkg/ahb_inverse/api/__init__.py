"""API layer for ahb-inverse."""

from .client import CheckReport, ExperimentResult, ExperimentRunner, RunResult

__all__ = ["ExperimentRunner", "ExperimentResult", "RunResult", "CheckReport"]
