"""Discretized Hilbert-space vectors and data-noise generation."""

from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from .errors import NoiseLevelError

ArrayLike = Union[np.ndarray, list, tuple, float]


class GridVector:
    """Grid values paired with the quadrature weights that define the inner product.

    ``inner(u, v) = sum(weights * u * v)``. All-ones weights give the Euclidean
    space; trapezoidal or cell-area weights make norms consistent with the
    underlying L2 function space. ``values`` may be any shape (images stay 2-D);
    ``weights`` always has the same shape.
    """

    __slots__ = ("values", "weights")

    def __init__(self, values: ArrayLike, weights: Optional[ArrayLike] = None):
        values = np.array(values, dtype=float)
        if values.ndim == 0:
            values = values.reshape(1)
        if values.size < 1:
            raise ValueError("GridVector needs at least one entry")

        if weights is None:
            weights = np.ones_like(values)
        else:
            weights = np.array(np.broadcast_to(np.asarray(weights, dtype=float), values.shape))

        if weights.shape != values.shape:
            raise ValueError(f"weights shape {weights.shape} != values shape {values.shape}")
        if not np.all(weights > 0):
            raise ValueError("quadrature weights must be strictly positive")

        self.values = values
        self.weights = weights

    @classmethod
    def _raw(cls, values: np.ndarray, weights: np.ndarray) -> "GridVector":
        vec = object.__new__(cls)
        vec.values = values
        vec.weights = weights
        return vec

    def like(self, values: np.ndarray) -> "GridVector":
        """New vector in the same space (weights shared, not revalidated)."""
        values = np.asarray(values, dtype=float).reshape(self.values.shape)
        return GridVector._raw(values, self.weights)

    def zeros_like(self) -> "GridVector":
        return GridVector._raw(np.zeros_like(self.values), self.weights)

    def copy(self) -> "GridVector":
        return GridVector._raw(self.values.copy(), self.weights)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def size(self) -> int:
        return self.values.size

    def inner(self, other: "GridVector") -> float:
        return float(np.sum(self.weights * self.values * other.values))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights * self.values * self.values)))

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __add__(self, other: "GridVector") -> "GridVector":
        return GridVector._raw(self.values + other.values, self.weights)

    def __sub__(self, other: "GridVector") -> "GridVector":
        return GridVector._raw(self.values - other.values, self.weights)

    def __neg__(self) -> "GridVector":
        return GridVector._raw(-self.values, self.weights)

    def __mul__(self, scalar: float) -> "GridVector":
        return GridVector._raw(scalar * self.values, self.weights)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "GridVector":
        return GridVector._raw(self.values / scalar, self.weights)

    def __repr__(self) -> str:
        return f"GridVector(shape={self.shape}, norm={self.norm():.6g})"


def inner(u: GridVector, v: GridVector) -> float:
    """Weighted inner product."""
    return u.inner(v)


def norm(u: GridVector) -> float:
    """Weighted norm."""
    return u.norm()


def add_noise_exact(y: GridVector, delta: float, seed: int) -> GridVector:
    """Return y + delta * e / ||e|| for a standard Gaussian draw e.

    The noise has weighted norm exactly ``delta``; the draw is reproducible
    for a fixed ``seed`` (numpy PCG64 generator).
    """
    if delta < 0:
        raise NoiseLevelError(f"noise level must be nonnegative, got {delta}")
    if delta == 0:
        return y.copy()

    rng = np.random.default_rng(seed)
    while True:
        e = y.like(rng.standard_normal(y.shape))
        e_norm = e.norm()
        if e_norm > 0:
            break
        logger.debug("Zero-norm noise draw, redrawing")

    return y + (delta / e_norm) * e


def add_noise_relative(y: GridVector, delta_rel: float, seed: int) -> Tuple[GridVector, float]:
    """Add noise at relative level ``delta_rel``; returns (y_delta, delta = delta_rel * ||y||)."""
    if delta_rel < 0:
        raise NoiseLevelError(f"relative noise level must be nonnegative, got {delta_rel}")
    y_norm = y.norm()
    if y_norm == 0:
        raise NoiseLevelError("relative noise level is undefined for zero data")

    delta = delta_rel * y_norm
    return add_noise_exact(y, delta, seed), delta
