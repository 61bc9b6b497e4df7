"""Momentum baselines for linear problems with the quadratic regularizer.

Both methods act directly on the primal iterate (``x = xi``) and start from
``x_{-1} = x_0 = 0``.
"""

import math
import time
from typing import Optional, Tuple

from loguru import logger

from ..core.errors import UnsupportedCombinationError
from ..core.interfaces import ForwardProblem, Regularizer, estimate_operator_norm
from ..core.models import IterationRow, NesterovConfig, NuConfig, RunRecord, StopReason
from ..core.spaces import GridVector
from ..core.stopping import StoppingRule
from .heavy_ball import LOG_EVERY, NORM_ESTIMATE_ITERS, truth_error


def nu_coefficients(n: int, nu: float) -> Tuple[float, float]:
    """(alpha_n, beta_n) of the nu-method."""
    alpha = 4.0 * (2 * n + 2 * nu + 1) * (n + nu) / ((n + 2 * nu) * (2 * n + 4 * nu + 1))
    beta = (
        n
        * (2 * n - 1)
        * (2 * n + 2 * nu + 1)
        / ((n + 2 * nu) * (2 * n + 4 * nu + 1) * (2 * n + 2 * nu - 1))
    )
    return alpha, beta


def nesterov_weight(n: int, alpha_shift: float) -> float:
    """Extrapolation weight (n - 1) / (n + alpha_shift)."""
    return (n - 1) / (n + alpha_shift)


def require_linear_quadratic(
    method: str, prob: ForwardProblem, reg: Optional[Regularizer] = None
) -> None:
    if not prob.is_linear:
        raise UnsupportedCombinationError(f"{method} needs a linear problem; {prob.name} is nonlinear")
    if reg is not None and not reg.is_quadratic:
        raise UnsupportedCombinationError(
            f"{method} needs the quadratic regularizer, got {reg.name}"
        )


def resolve_gamma(
    method: str, prob: ForwardProblem, gamma: Optional[float], gamma_scale: float
) -> float:
    """Explicit gamma, or gamma_scale / ||A||^2 from the problem's bound or a power-iteration estimate."""
    bound = prob.norm_bound
    if bound is None:
        bound = estimate_operator_norm(prob, prob.param_zeros(), NORM_ESTIMATE_ITERS, seed=0)
    if gamma is None:
        return gamma_scale / (bound * bound)
    if gamma * bound * bound >= 1.0:
        logger.warning(f"{method}: gamma = {gamma:g} >= 1/||A||^2 = {1.0 / bound**2:g}")
    return gamma


def _finish_row(
    record: RunRecord,
    rule: StoppingRule,
    row: IterationRow,
    method: str,
) -> bool:
    """Record a terminal row when the run should stop at ``row``; returns True if it stopped."""
    n = row.n
    if not math.isfinite(row.residual_norm):
        record.add_row(row)
        record.finish(StopReason.ABORTED, n, f"non-finite residual at n={n}")
        logger.error(f"{method}: {record.message}")
        return True
    if rule.satisfied(row.residual_norm):
        record.add_row(row)
        reason = StopReason.EXACT_ZERO_RESIDUAL if rule.exact_data else StopReason.DISCREPANCY
        record.finish(reason, n)
        return True
    if n >= rule.max_iter:
        record.add_row(row)
        record.finish(StopReason.MAX_ITER, n, f"no stop after {rule.max_iter} iterations")
        logger.warning(f"{method}: {record.message} (residual {row.residual_norm:.4g})")
        return True
    return False


def nu_method_solve(
    prob: ForwardProblem,
    y_delta: GridVector,
    delta: float,
    cfg: NuConfig,
    truth: Optional[GridVector] = None,
    reg: Optional[Regularizer] = None,
    method: str = "nu-method",
) -> Tuple[GridVector, RunRecord]:
    """Brakhage's nu-method with the discrepancy principle."""
    require_linear_quadratic(method, prob, reg)
    if delta < 0:
        raise ValueError(f"noise level must be nonnegative, got {delta}")

    gamma = resolve_gamma(method, prob, cfg.gamma, cfg.gamma_scale)
    rule = StoppingRule(tau=cfg.tau, delta=delta, max_iter=cfg.max_iter)
    record = RunRecord(method=method, delta=delta, tau=cfg.tau)
    if not cfg.record_truth_error:
        truth = None

    logger.info(f"{method}: start on {prob.name}, delta={delta:.3g}, nu={cfg.nu:g}, gamma={gamma:.4g}")
    start = time.perf_counter()

    x_prev = prob.param_zeros()
    x = prob.param_zeros()
    n = 0
    while True:
        r = prob.apply(x) - y_delta
        record.forward_evals += 1
        row = IterationRow(
            n=n,
            residual_norm=r.norm(),
            truth_error=truth_error(prob, x, truth),
            elapsed=time.perf_counter() - start,
        )
        if _finish_row(record, rule, row, method):
            break

        alpha_n, beta_n = nu_coefficients(n, cfg.nu)
        row.alpha = alpha_n * gamma
        row.beta = beta_n
        record.add_row(row)
        if n % LOG_EVERY == 0:
            logger.debug(f"{method}: n={n} residual={row.residual_norm:.6g}")

        g = prob.lin_adjoint(x, r)
        x_next = x - (alpha_n * gamma) * g
        if beta_n > 0:
            x_next = x_next + beta_n * (x - x_prev)
        x_prev, x = x, x_next
        n += 1

    record.elapsed_seconds = time.perf_counter() - start
    logger.info(f"{method}: {record.stop_reason.value} after {record.iterations} iterations")
    return x, record


def nesterov_solve(
    prob: ForwardProblem,
    y_delta: GridVector,
    delta: float,
    cfg: NesterovConfig,
    truth: Optional[GridVector] = None,
    reg: Optional[Regularizer] = None,
    method: str = "Nesterov",
) -> Tuple[GridVector, RunRecord]:
    """Nesterov-accelerated Landweber.

    The discrepancy principle is checked on ``A x_n - y_delta`` while the
    update uses ``A z_n - y_delta``, so every step costs two forward
    applications; ``RunRecord.forward_evals`` counts both.
    """
    require_linear_quadratic(method, prob, reg)
    if delta < 0:
        raise ValueError(f"noise level must be nonnegative, got {delta}")

    gamma = resolve_gamma(method, prob, cfg.gamma, cfg.gamma_scale)
    rule = StoppingRule(tau=cfg.tau, delta=delta, max_iter=cfg.max_iter)
    record = RunRecord(method=method, delta=delta, tau=cfg.tau)
    if not cfg.record_truth_error:
        truth = None

    logger.info(
        f"{method}: start on {prob.name}, delta={delta:.3g}, "
        f"alpha_shift={cfg.alpha_shift:g}, gamma={gamma:.4g}"
    )
    start = time.perf_counter()

    x_prev = prob.param_zeros()
    x = prob.param_zeros()
    n = 0
    while True:
        r = prob.apply(x) - y_delta
        record.forward_evals += 1
        row = IterationRow(
            n=n,
            residual_norm=r.norm(),
            truth_error=truth_error(prob, x, truth),
            elapsed=time.perf_counter() - start,
        )
        if _finish_row(record, rule, row, method):
            break

        weight = nesterov_weight(n, cfg.alpha_shift)
        row.alpha = gamma
        row.beta = weight
        record.add_row(row)
        if n % LOG_EVERY == 0:
            logger.debug(f"{method}: n={n} residual={row.residual_norm:.6g}")

        z = x + weight * (x - x_prev)
        r_z = prob.apply(z) - y_delta
        record.forward_evals += 1
        x_prev, x = x, z - gamma * prob.lin_adjoint(z, r_z)
        n += 1

    record.elapsed_seconds = time.perf_counter() - start
    logger.info(f"{method}: {record.stop_reason.value} after {record.iterations} iterations")
    return x, record
