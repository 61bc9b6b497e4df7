"""Built-in forward problems."""

from .elliptic import EllipticProblem, build_elliptic, elliptic_derivative_check
from .fredholm import build_fredholm
from .matrix import MatrixProblem
from .phantom import shepp_logan
from .registry import PROBLEMS, ProblemSetup, build_problem, build_regularizer
from .tomography import build_tomo, chord_length, ray_pixel_lengths

__all__ = [
    "EllipticProblem",
    "MatrixProblem",
    "build_elliptic",
    "build_fredholm",
    "build_tomo",
    "shepp_logan",
    "elliptic_derivative_check",
    "chord_length",
    "ray_pixel_lengths",
    "PROBLEMS",
    "ProblemSetup",
    "build_problem",
    "build_regularizer",
]
