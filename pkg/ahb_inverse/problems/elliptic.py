"""Parameter identification in -Laplace(u) + c u = f on the unit square.

The forward map sends a coefficient ``c`` on the m x m interior nodes to the
solution ``u(c)`` of the 5-point finite-difference problem with Dirichlet
data ``g``. Both spaces carry the cell measure ``h^2`` as weight.
"""

import threading
from typing import NamedTuple, Optional

import numpy as np
import scipy.sparse as sp
from loguru import logger
from scipy.sparse.linalg import splu

from ..core.errors import DomainError
from ..core.interfaces import ForwardProblem
from ..core.models import DerivativeReport
from ..core.spaces import GridVector

TAYLOR_RATIO_RANGE = (3.5, 4.5)


def grid_coordinates(m: int):
    """(X, Y) of the m x m interior nodes; row index follows y, column index follows x."""
    h = 1.0 / (m + 1)
    axis = h * np.arange(1, m + 1)
    return np.meshgrid(axis, axis)


def negative_laplacian(m: int) -> sp.csc_matrix:
    h = 1.0 / (m + 1)
    second = sp.diags([-np.ones(m - 1), 2.0 * np.ones(m), -np.ones(m - 1)], [-1, 0, 1])
    eye = sp.identity(m)
    return ((sp.kron(eye, second) + sp.kron(second, eye)) / h**2).tocsc()


def boundary_load(g_full: np.ndarray) -> np.ndarray:
    """Dirichlet values on the (m+2) x (m+2) node grid folded into the interior right-hand side."""
    m = g_full.shape[0] - 2
    h = 1.0 / (m + 1)
    frame = g_full.copy()
    frame[1:-1, 1:-1] = 0.0
    load = frame[:-2, 1:-1] + frame[2:, 1:-1] + frame[1:-1, :-2] + frame[1:-1, 2:]
    return load / h**2


def default_coefficient(m: int) -> np.ndarray:
    """Piecewise constant truth: 2 on a square, 1 on a disc, 0 elsewhere."""
    X, Y = grid_coordinates(m)
    c = np.zeros((m, m))
    c[(X >= 0.2) & (X <= 0.5) & (Y >= 0.2) & (Y <= 0.5)] = 2.0
    c[(X - 0.7) ** 2 + (Y - 0.65) ** 2 <= 0.15**2] = 1.0
    return c


class _Factorization(NamedTuple):
    key: bytes
    lu: object
    u: np.ndarray


class EllipticProblem(ForwardProblem):
    """c -> u(c) with F'(c) h = -A(c)^{-1}(h u(c)) and F'(c)* w = -u(c) A(c)^{-1} w.

    The last factorization and state are cached per coefficient behind a lock,
    so one instance can serve concurrent runs.
    """

    name = "elliptic"
    eta = 0.01
    relative_error = False

    def __init__(
        self,
        m: int,
        f: np.ndarray,
        g_full: np.ndarray,
        center: Optional[np.ndarray] = None,
        domain_radius: float = 10.0,
        strict_domain: bool = False,
    ):
        if m < 2:
            raise ValueError(f"grid needs at least 2 interior nodes per side, got {m}")
        self.m = m
        self.h = 1.0 / (m + 1)
        self.image_shape = (m, m)
        self._zero = GridVector(np.zeros((m, m)), self.h**2)
        self._laplacian = negative_laplacian(m)
        self._rhs = (np.asarray(f, dtype=float) + boundary_load(np.asarray(g_full, dtype=float))).ravel()
        self.center = None if center is None else self._zero.like(np.maximum(center, 0.0))
        self.domain_radius = domain_radius
        self.strict_domain = strict_domain
        self._cache: Optional[_Factorization] = None
        self._lock = threading.Lock()

    @property
    def cell_area(self) -> float:
        return self.h**2

    def param_zeros(self) -> GridVector:
        return self._zero.zeros_like()

    def data_zeros(self) -> GridVector:
        return self._zero.zeros_like()

    def system_matrix(self, c: GridVector) -> sp.csc_matrix:
        return (self._laplacian + sp.diags(c.values.ravel())).tocsc()

    def _factor(self, c: GridVector) -> _Factorization:
        key = c.values.tobytes()
        with self._lock:
            cached = self._cache
            if cached is not None and cached.key == key:
                return cached
            try:
                lu = splu(self.system_matrix(c))
            except RuntimeError as exc:
                raise DomainError(f"singular elliptic operator: {exc}") from exc
            u = lu.solve(self._rhs)
            if not np.all(np.isfinite(u)):
                raise DomainError("elliptic solve produced non-finite values")
            self._cache = _Factorization(key, lu, u)
            return self._cache

    def solve(self, c: GridVector, rhs: np.ndarray) -> np.ndarray:
        """A(c)^{-1} rhs for a flat right-hand side."""
        return self._factor(c).lu.solve(np.ascontiguousarray(rhs, dtype=float))

    def apply(self, c: GridVector) -> GridVector:
        return self._zero.like(self._factor(c).u)

    def lin_apply(self, c: GridVector, h: GridVector) -> GridVector:
        fac = self._factor(c)
        return self._zero.like(-fac.lu.solve(h.values.ravel() * fac.u))

    def lin_adjoint(self, c: GridVector, w: GridVector) -> GridVector:
        fac = self._factor(c)
        return self._zero.like(-fac.u * fac.lu.solve(np.ascontiguousarray(w.values.ravel())))

    def domain_check(self, c: GridVector) -> bool:
        if self.center is None:
            return True
        distance = (c - self.center).norm()
        if distance <= self.domain_radius:
            return True
        message = (
            f"coefficient is {distance:.4g} from the reference point, "
            f"outside the radius {self.domain_radius:g} ball"
        )
        if self.strict_domain:
            raise DomainError(message)
        logger.warning(message)
        return False


class EllipticSetup(NamedTuple):
    problem: EllipticProblem
    truth: GridVector
    exact_data: GridVector


def build_elliptic(
    m: int = 64,
    c_true: Optional[np.ndarray] = None,
    domain_radius: float = 10.0,
) -> EllipticSetup:
    """Problem whose continuum solution at ``c_true`` is u = x + y.

    Uses f = c_true (x + y) and g = x + y on the boundary. The exact data is
    the discrete solve at ``c_true``.
    """
    if m < 8:
        raise ValueError(f"grid must have at least 8 interior nodes per side, got {m}")
    c_true = default_coefficient(m) if c_true is None else np.asarray(c_true, dtype=float)
    if c_true.shape != (m, m):
        raise ValueError(f"coefficient shape {c_true.shape} != ({m}, {m})")
    if np.any(c_true < 0):
        raise ValueError("true coefficient must be nonnegative")

    X, Y = grid_coordinates(m)
    full = np.linspace(0.0, 1.0, m + 2)
    FX, FY = np.meshgrid(full, full)

    problem = EllipticProblem(
        m,
        f=c_true * (X + Y),
        g_full=FX + FY,
        center=c_true,
        domain_radius=domain_radius,
    )
    truth = problem.param_zeros().like(c_true)
    exact_data = problem.apply(truth)
    logger.debug(f"Elliptic problem on a {m}x{m} grid, h = {problem.h:.4g}")
    return EllipticSetup(problem, truth, exact_data)


def elliptic_derivative_check(
    prob: EllipticProblem,
    c: GridVector,
    h: GridVector,
    epsilon: float = 1e-3,
) -> DerivativeReport:
    """Taylor test: the linearization remainder must shrink by ~4 when epsilon halves."""

    def remainder(eps: float) -> float:
        base = prob.apply(c)
        step = prob.apply(c + eps * h)
        return (step - base - eps * prob.lin_apply(c, h)).norm()

    r_full = remainder(epsilon)
    r_half = remainder(epsilon / 2.0)

    if r_full == 0.0 and r_half == 0.0:
        return DerivativeReport(
            epsilon=epsilon,
            remainder=0.0,
            remainder_half=0.0,
            passed=True,
            message="zero remainder",
        )
    if r_half == 0.0:
        return DerivativeReport(
            epsilon=epsilon,
            remainder=r_full,
            remainder_half=0.0,
            passed=False,
            message="remainder vanished only at the half step",
        )

    ratio = r_full / r_half
    low, high = TAYLOR_RATIO_RANGE
    passed = low <= ratio <= high
    return DerivativeReport(
        epsilon=epsilon,
        remainder=r_full,
        remainder_half=r_half,
        ratio=ratio,
        passed=passed,
        message="" if passed else f"remainder ratio {ratio:.3f} outside [{low}, {high}]",
    )
