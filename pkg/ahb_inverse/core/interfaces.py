"""Forward-problem and regularizer interfaces plus generic operator utilities."""

import copy
import math
from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from .errors import InfeasiblePointError
from .models import AdjointReport
from .spaces import GridVector


class ForwardProblem(ABC):
    """A (possibly nonlinear) forward map F with its linearization family L(x).

    Implementations must be safe to share read-only between concurrent runs.
    """

    name: str = "problem"
    eta: float = 0.0
    norm_bound: Optional[float] = None
    relative_error: bool = True
    image_shape: Optional[Tuple[int, int]] = None

    @property
    def is_linear(self) -> bool:
        return False

    @abstractmethod
    def param_zeros(self) -> GridVector:
        """Zero element of the parameter space X."""

    @abstractmethod
    def data_zeros(self) -> GridVector:
        """Zero element of the data space Y."""

    @abstractmethod
    def apply(self, x: GridVector) -> GridVector:
        """F(x)."""

    @abstractmethod
    def lin_apply(self, x: GridVector, h: GridVector) -> GridVector:
        """L(x) h."""

    @abstractmethod
    def lin_adjoint(self, x: GridVector, w: GridVector) -> GridVector:
        """L(x)* w."""

    def domain_check(self, x: GridVector) -> bool:
        return True


class LinearProblem(ForwardProblem):
    """Bounded linear forward map: F(x) = L x for every base point."""

    eta = 0.0

    @property
    def is_linear(self) -> bool:
        return True

    def apply(self, x: GridVector) -> GridVector:
        return self.lin_apply(x, x)


class Regularizer(ABC):
    """Strongly convex regularization functional R with conjugate gradient map."""

    name: str = "regularizer"
    sigma: float = 0.5

    @abstractmethod
    def value(self, x: GridVector) -> float:
        """R(x), possibly +inf."""

    @abstractmethod
    def conj_grad(self, xi: GridVector) -> GridVector:
        """grad R*(xi): the minimizer of R(x) - <xi, x>."""

    @property
    def is_quadratic(self) -> bool:
        return False

    def reset(self) -> None:
        """Drop any per-run state (warm starts)."""

    def fresh(self) -> "Regularizer":
        """Same configuration, empty per-run state."""
        clone = copy.deepcopy(self)
        clone.reset()
        return clone


def bregman_distance(reg: Regularizer, xi: GridVector, x: GridVector, z: GridVector) -> float:
    """D_R^xi(z, x) = R(z) - R(x) - <xi, z - x> for xi in the subdifferential of R at x."""
    r_z = reg.value(z)
    if not math.isfinite(r_z):
        raise InfeasiblePointError("regularizer is not finite at the comparison point")
    return r_z - reg.value(x) - xi.inner(z - x)


def _random_unit(template: GridVector, rng: np.random.Generator) -> GridVector:
    while True:
        v = template.like(rng.standard_normal(template.shape))
        v_norm = v.norm()
        if v_norm > 0:
            return v / v_norm
        logger.debug("Zero start vector, redrawing")


def estimate_operator_norm(prob: ForwardProblem, x: GridVector, iters: int, seed: int) -> float:
    """Estimate ||L(x)|| by power iteration on L(x)* L(x) from a random start.

    The estimate is a Rayleigh quotient, so it never exceeds the true norm and
    is nondecreasing in ``iters``.
    """
    if iters < 1:
        raise ValueError("power iteration needs at least one step")

    rng = np.random.default_rng(seed)
    v = _random_unit(prob.param_zeros(), rng)

    estimate = 0.0
    for _ in range(iters):
        Av = prob.lin_apply(x, v)
        estimate = Av.norm()
        w = prob.lin_adjoint(x, Av)
        w_norm = w.norm()
        if w_norm == 0:
            break
        v = w / w_norm

    logger.debug(f"Operator norm estimate for {prob.name}: {estimate:.10g} ({iters} iterations)")
    return estimate


def adjoint_consistency(
    prob: ForwardProblem,
    x: GridVector,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-10,
) -> AdjointReport:
    """Check |<L(x)h, w>_Y - <h, L(x)*w>_X| <= tol * (1 + ||h|| ||w||) on random pairs."""
    rng = np.random.default_rng(seed)
    x_zero = prob.param_zeros()
    y_zero = prob.data_zeros()

    worst = 0.0
    for _ in range(trials):
        h = x_zero.like(rng.standard_normal(x_zero.shape))
        w = y_zero.like(rng.standard_normal(y_zero.shape))
        lhs = prob.lin_apply(x, h).inner(w)
        rhs = h.inner(prob.lin_adjoint(x, w))
        worst = max(worst, abs(lhs - rhs) / (1.0 + h.norm() * w.norm()))

    return AdjointReport(
        problem=prob.name,
        trials=trials,
        max_discrepancy=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
    )
