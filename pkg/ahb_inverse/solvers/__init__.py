"""Iterative solvers: adaptive heavy ball, Landweber, nu-method and Nesterov."""

from .heavy_ball import SolverState, ahb_solve, landweber_solve, truth_error
from .linear import nesterov_solve, nesterov_weight, nu_coefficients, nu_method_solve
from .rules import gamma_tilde_update, momentum_coefficient, step_size

__all__ = [
    "SolverState",
    "ahb_solve",
    "landweber_solve",
    "truth_error",
    "nu_method_solve",
    "nesterov_solve",
    "nu_coefficients",
    "nesterov_weight",
    "step_size",
    "gamma_tilde_update",
    "momentum_coefficient",
]
