"""2-D X-ray transmission tomography with exact ray/pixel intersection lengths."""

import math
from typing import Iterator, NamedTuple, Tuple

import numpy as np
import scipy.sparse as sp
from loguru import logger

from ..core.errors import ConfigurationError
from ..core.spaces import GridVector
from .matrix import MatrixProblem
from .phantom import shepp_logan

AXIS_EPS = 1e-12


def _slab(origin: float, direction: float, half: float) -> Tuple[float, float]:
    """Parameter interval where origin + t * direction lies in (-half, half)."""
    if abs(direction) < AXIS_EPS:
        if -half < origin < half:
            return -math.inf, math.inf
        return math.inf, -math.inf
    t1 = (-half - origin) / direction
    t2 = (half - origin) / direction
    return min(t1, t2), max(t1, t2)


def chord_length(origin, direction, rows: int, cols: int) -> float:
    """Length of the ray inside the image bounding box [-cols/2, cols/2] x [-rows/2, rows/2]."""
    ox, oy = origin
    dx, dy = np.asarray(direction, dtype=float) / np.hypot(*direction)
    tx0, tx1 = _slab(ox, dx, cols / 2.0)
    ty0, ty1 = _slab(oy, dy, rows / 2.0)
    return max(0.0, min(tx1, ty1) - max(tx0, ty0))


def ray_pixel_lengths(origin, direction, rows: int, cols: int) -> Tuple[np.ndarray, np.ndarray]:
    """Siddon traversal: flat pixel indices crossed by the ray and the length inside each.

    Pixels are unit squares; row 0 is the top row, indices are row-major.
    """
    ox, oy = origin
    dx, dy = np.asarray(direction, dtype=float) / np.hypot(*direction)
    half_w, half_h = cols / 2.0, rows / 2.0

    tx0, tx1 = _slab(ox, dx, half_w)
    ty0, ty1 = _slab(oy, dy, half_h)
    t_min, t_max = max(tx0, ty0), min(tx1, ty1)
    if not t_max > t_min:
        return np.zeros(0, dtype=int), np.zeros(0)

    crossings = [np.array([t_min, t_max])]
    if abs(dx) >= AXIS_EPS:
        crossings.append((-half_w + np.arange(cols + 1) - ox) / dx)
    if abs(dy) >= AXIS_EPS:
        crossings.append((-half_h + np.arange(rows + 1) - oy) / dy)
    t = np.unique(np.concatenate(crossings))
    t = t[(t >= t_min) & (t <= t_max)]

    lengths = np.diff(t)
    mids = 0.5 * (t[:-1] + t[1:])
    j = np.clip(np.floor(ox + mids * dx + half_w).astype(int), 0, cols - 1)
    i = np.clip(np.floor(half_h - (oy + mids * dy)).astype(int), 0, rows - 1)

    keep = lengths > 0
    return (i * cols + j)[keep], lengths[keep]


def projection_angles(n_angles: int) -> np.ndarray:
    """Evenly spaced source angles over [1, 360] degrees, in radians."""
    return np.deg2rad(np.linspace(1.0, 360.0, n_angles))


def parallel_rays(rows: int, cols: int, n_angles: int, n_rays: int) -> Iterator[Tuple[tuple, tuple]]:
    """(origin, direction) of each ray; offsets sit at cell centers across the image diagonal."""
    diag = math.hypot(rows, cols)
    offsets = -diag / 2.0 + (np.arange(n_rays) + 0.5) * diag / n_rays
    for theta in projection_angles(n_angles):
        normal = (math.cos(theta), math.sin(theta))
        direction = (-math.sin(theta), math.cos(theta))
        for s in offsets:
            origin = (s * normal[0] - diag * direction[0], s * normal[1] - diag * direction[1])
            yield origin, direction


def fan_rays(rows: int, cols: int, n_angles: int, n_rays: int) -> Iterator[Tuple[tuple, tuple]]:
    """Point source at twice the image half-diagonal; the fan just covers the image."""
    half_diag = math.hypot(rows, cols) / 2.0
    radius = 2.0 * half_diag
    half_fan = math.asin(half_diag / radius)
    spread = -half_fan + (np.arange(n_rays) + 0.5) * 2.0 * half_fan / n_rays
    for theta in projection_angles(n_angles):
        source = (radius * math.cos(theta), radius * math.sin(theta))
        central = theta + math.pi
        for psi in spread:
            yield source, (math.cos(central + psi), math.sin(central + psi))


def system_matrix(rows: int, cols: int, n_angles: int, n_rays: int, geometry: str) -> sp.csr_matrix:
    if geometry == "parallel":
        rays = parallel_rays(rows, cols, n_angles, n_rays)
    elif geometry == "fan":
        rays = fan_rays(rows, cols, n_angles, n_rays)
    else:
        raise ConfigurationError(f"unknown tomography geometry: {geometry}")

    row_idx, col_idx, values = [], [], []
    for k, (origin, direction) in enumerate(rays):
        idx, lengths = ray_pixel_lengths(origin, direction, rows, cols)
        row_idx.append(np.full(idx.size, k))
        col_idx.append(idx)
        values.append(lengths)

    shape = (n_angles * n_rays, rows * cols)
    return sp.csr_matrix(
        (np.concatenate(values), (np.concatenate(row_idx), np.concatenate(col_idx))), shape=shape
    )


class TomoSetup(NamedTuple):
    problem: MatrixProblem
    truth: GridVector
    exact_data: GridVector


def build_tomo(
    rows: int = 64,
    cols: int = 64,
    n_angles: int = 30,
    n_rays: int = 95,
    geometry: str = "parallel",
) -> TomoSetup:
    """Tomography problem on a ``rows x cols`` Shepp-Logan phantom with Euclidean inner products."""
    if rows < 8 or cols < 8:
        raise ConfigurationError(f"image must be at least 8x8, got {rows}x{cols}")
    if n_angles < 1 or n_rays < 1:
        raise ConfigurationError("need at least one angle and one ray")

    matrix = system_matrix(rows, cols, n_angles, n_rays, geometry)
    problem = MatrixProblem(
        matrix,
        param_weights=1.0,
        data_weights=1.0,
        name="tomography",
        param_shape=(rows, cols),
        image_shape=(rows, cols),
    )
    truth = problem.param_zeros().like(shepp_logan(rows, cols))
    exact_data = problem.apply(truth)

    logger.debug(
        f"{geometry} tomography: {matrix.shape[0]} rays x {matrix.shape[1]} pixels, "
        f"{matrix.nnz} nonzeros, ||A|| = {problem.norm_bound:.6g}"
    )
    return TomoSetup(problem, truth, exact_data)
