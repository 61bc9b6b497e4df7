"""Periodic forward-difference gradient, its negative adjoint and isotropic TV."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GradientField:
    """Forward differences of an I x J image along rows (u) and columns (v)."""

    u: np.ndarray
    v: np.ndarray

    @property
    def shape(self):
        return self.u.shape

    def magnitude(self) -> np.ndarray:
        return np.sqrt(self.u**2 + self.v**2)

    def inner(self, other: "GradientField") -> float:
        return float(np.sum(self.u * other.u) + np.sum(self.v * other.v))

    def __add__(self, other: "GradientField") -> "GradientField":
        return GradientField(self.u + other.u, self.v + other.v)

    def scale(self, factor) -> "GradientField":
        """Multiply by a scalar or a pointwise I x J factor."""
        return GradientField(self.u * factor, self.v * factor)

    @classmethod
    def zeros(cls, shape) -> "GradientField":
        return cls(np.zeros(shape), np.zeros(shape))


def discrete_gradient(x: np.ndarray) -> GradientField:
    """(grad_1 x)_ij = x_{i+1,j} - x_ij, (grad_2 x)_ij = x_{i,j+1} - x_ij, wrapping at the last row/column."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {x.shape}")
    u = np.roll(x, -1, axis=0) - x
    v = np.roll(x, -1, axis=1) - x
    return GradientField(u, v)


def discrete_divergence(g: GradientField) -> np.ndarray:
    """Exact negative adjoint of discrete_gradient under the Euclidean inner product."""
    if g.u.shape != g.v.shape:
        raise ValueError(f"field components differ in shape: {g.u.shape} vs {g.v.shape}")
    return (g.u - np.roll(g.u, 1, axis=0)) + (g.v - np.roll(g.v, 1, axis=1))


def tv_value(x: np.ndarray) -> float:
    """Isotropic total variation: sum of pointwise gradient magnitudes."""
    return float(np.sum(discrete_gradient(x).magnitude()))
