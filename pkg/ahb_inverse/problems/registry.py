"""Catalogue of the built-in forward problems and regularizer construction."""

from typing import Callable, Dict, NamedTuple

from ..core.errors import UnsupportedCombinationError
from ..core.interfaces import ForwardProblem, Regularizer
from ..core.models import EllipticSpec, FredholmSpec, RegularizerSpec, TomographySpec
from ..core.spaces import GridVector
from ..regularizers import QuadraticReg, TVQuadraticReg
from .elliptic import build_elliptic
from .fredholm import build_fredholm
from .tomography import build_tomo


class ProblemSetup(NamedTuple):
    problem: ForwardProblem
    truth: GridVector
    exact_data: GridVector


class ProblemInfo(NamedTuple):
    name: str
    description: str
    linear: bool
    image_valued: bool
    error_kind: str
    builder: Callable[..., ProblemSetup]


def _fredholm(spec: FredholmSpec) -> ProblemSetup:
    setup = build_fredholm(spec.n_nodes)
    return ProblemSetup(setup.problem, setup.truth, setup.exact_data)


def _tomography(spec: TomographySpec) -> ProblemSetup:
    setup = build_tomo(spec.rows, spec.cols, spec.n_angles, spec.n_rays, spec.geometry)
    return ProblemSetup(*setup)


def _elliptic(spec: EllipticSpec) -> ProblemSetup:
    setup = build_elliptic(spec.m, domain_radius=spec.domain_radius)
    return ProblemSetup(*setup)


PROBLEMS: Dict[str, ProblemInfo] = {
    "fredholm": ProblemInfo(
        "fredholm",
        "Fredholm integral equation on [0, 1], trapezoidal rule",
        True,
        False,
        "relative",
        _fredholm,
    ),
    "tomography": ProblemInfo(
        "tomography",
        "2-D tomography of a Shepp-Logan phantom (parallel or fan beam)",
        True,
        True,
        "relative",
        _tomography,
    ),
    "elliptic": ProblemInfo(
        "elliptic",
        "Coefficient identification in -Laplace(u) + c u = f on the unit square",
        False,
        True,
        "absolute",
        _elliptic,
    ),
}


def build_problem(spec) -> ProblemSetup:
    """Construct the problem, its truth and exact data from a validated problem spec."""
    try:
        info = PROBLEMS[spec.name]
    except KeyError:
        raise UnsupportedCombinationError(f"unknown problem: {spec.name}") from None
    return info.builder(spec)


def build_regularizer(spec: RegularizerSpec, problem: ForwardProblem) -> Regularizer:
    """Quadratic regularizer, or quadratic + TV for image-valued problems."""
    if spec.name == "quadratic":
        return QuadraticReg()
    if problem.image_shape is None:
        raise UnsupportedCombinationError(
            f"total variation needs an image-valued parameter; {problem.name} is one-dimensional"
        )
    rows, cols = problem.image_shape
    return TVQuadraticReg(
        spec.kappa,
        rows,
        cols,
        pdhg_iters=spec.pdhg_iters,
        cell_area=getattr(problem, "cell_area", 1.0),
    )
