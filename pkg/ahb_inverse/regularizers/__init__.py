"""Regularization functionals and their conjugate-gradient maps."""

from .functionals import QuadraticReg, TVQuadraticReg
from .gradient import GradientField, discrete_divergence, discrete_gradient, tv_value
from .pdhg import pdhg_denoise, pdhg_solve, tv_denoise_objective

__all__ = [
    "QuadraticReg",
    "TVQuadraticReg",
    "GradientField",
    "discrete_gradient",
    "discrete_divergence",
    "tv_value",
    "pdhg_solve",
    "pdhg_denoise",
    "tv_denoise_objective",
]
