"""Strongly convex regularizers: plain quadratic and quadratic + total variation."""

from typing import Optional

from loguru import logger

from ..core.interfaces import Regularizer
from ..core.spaces import GridVector
from .gradient import GradientField, tv_value
from .pdhg import pdhg_solve


class QuadraticReg(Regularizer):
    """R(x) = ||x||^2 / 2. Its conjugate gradient is the identity."""

    name = "quadratic"
    sigma = 0.5

    def value(self, x: GridVector) -> float:
        return 0.5 * x.inner(x)

    def conj_grad(self, xi: GridVector) -> GridVector:
        return xi.copy()

    @property
    def is_quadratic(self) -> bool:
        return True


class TVQuadraticReg(Regularizer):
    """R(x) = ||x||^2 / (2 kappa) + |x|_TV on a rows x cols image.

    ``grad R*(xi)`` is the TV denoising of ``kappa * xi``, computed with
    ``pdhg_iters`` primal-dual steps. The dual field is kept between calls and
    warm-starts the next solve; ``reset()`` clears it.

    ``cell_area`` is the quadrature weight of the parameter grid. ``value``
    multiplies the pixel TV by it, so under the weighted pairing
    ``<xi, x> = cell_area * sum(xi * x)`` the conjugate gradient is the
    unweighted denoising problem on any grid.
    """

    name = "tv"

    def __init__(
        self,
        kappa: float,
        rows: int,
        cols: int,
        pdhg_iters: int = 70,
        cell_area: float = 1.0,
    ):
        if kappa <= 0:
            raise ValueError(f"kappa must be positive, got {kappa}")
        if rows < 1 or cols < 1:
            raise ValueError(f"image shape must be positive, got {rows}x{cols}")
        if pdhg_iters < 1:
            raise ValueError(f"pdhg_iters must be >= 1, got {pdhg_iters}")
        if cell_area <= 0:
            raise ValueError(f"cell_area must be positive, got {cell_area}")

        self.kappa = kappa
        self.rows = rows
        self.cols = cols
        self.pdhg_iters = pdhg_iters
        self.cell_area = cell_area
        self.sigma = 1.0 / (2.0 * kappa)
        self._dual: Optional[GradientField] = None

    def _image(self, x: GridVector):
        if x.size != self.rows * self.cols:
            raise ValueError(
                f"vector of size {x.size} does not match a {self.rows}x{self.cols} image"
            )
        return x.values.reshape(self.rows, self.cols)

    def value(self, x: GridVector) -> float:
        return x.inner(x) / (2.0 * self.kappa) + self.cell_area * tv_value(self._image(x))

    def conj_grad(self, xi: GridVector) -> GridVector:
        # grad R*(xi) = argmin_x ||x - kappa xi||_F^2 / (2 kappa) + |x|_TV
        b = self.kappa * self._image(xi)
        x, self._dual = pdhg_solve(b, self.kappa, self.pdhg_iters, dual=self._dual)
        return xi.like(x)

    def reset(self) -> None:
        if self._dual is not None:
            logger.debug("Dropping PDHG warm start")
        self._dual = None
