"""Linear Fredholm integral equation of the first kind on [0, 1]."""

from typing import NamedTuple

import numpy as np
from loguru import logger

from ..core.spaces import GridVector
from .matrix import MatrixProblem

KERNEL_SCALE = 40.0


def kernel(s, t):
    """Green's-function kernel: 40 s (1 - t) for s <= t, 40 t (1 - s) otherwise."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return KERNEL_SCALE * np.where(s <= t, s * (1.0 - t), t * (1.0 - s))


def fredholm_truth(t):
    return 4.0 * t * (1.0 - t) + np.sin(2.0 * np.pi * t)


def trapezoid_weights(n_nodes: int) -> np.ndarray:
    if n_nodes < 2:
        raise ValueError(f"need at least two quadrature nodes, got {n_nodes}")
    h = 1.0 / (n_nodes - 1)
    weights = np.full(n_nodes, h)
    weights[0] = weights[-1] = h / 2.0
    return weights


class FredholmSetup(NamedTuple):
    problem: MatrixProblem
    truth: GridVector
    exact_data: GridVector
    nodes: np.ndarray


def build_fredholm(n_nodes: int = 1000) -> FredholmSetup:
    """Trapezoidal discretization ``(A x)_i = sum_j w_j k(s_i, t_j) x_j``.

    Both spaces carry the trapezoidal weights, so the discrete norms
    approximate L2(0, 1) norms and the operator is self-adjoint.
    """
    weights = trapezoid_weights(n_nodes)
    nodes = np.linspace(0.0, 1.0, n_nodes)
    K = kernel(nodes[:, None], nodes[None, :])

    problem = MatrixProblem(K * weights[None, :], weights, weights, name="fredholm")
    truth = problem.param_zeros().like(fredholm_truth(nodes))
    exact_data = problem.apply(truth)

    logger.debug(f"Fredholm problem on {n_nodes} nodes, ||A|| = {problem.norm_bound:.6g}")
    return FredholmSetup(problem, truth, exact_data, nodes)
