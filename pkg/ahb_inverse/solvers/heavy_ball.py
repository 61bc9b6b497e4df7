"""Adaptive heavy ball (AHB) iteration and the Landweber-type baseline.

Both iterate in the dual variable ``xi`` and recover the primal iterate as
``x = grad R*(xi)``:

    xi_{n+1} = xi_n - alpha_n L(x_n)*(F(x_n) - y_delta) + beta_n (xi_n - xi_{n-1})

with ``beta_n = 0`` for Landweber. Runs stop by the discrepancy principle;
with ``delta = 0`` they run on exact data until the residual vanishes or
``max_iter`` is reached.
"""

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from loguru import logger

from ..core.errors import DomainError
from ..core.interfaces import ForwardProblem, Regularizer, estimate_operator_norm
from ..core.models import IterationRow, RunRecord, SolverConfig, StepRule, StopReason
from ..core.spaces import GridVector
from ..core.stopping import StoppingRule
from .rules import gamma_tilde_update, momentum_coefficient, step_size

LOG_EVERY = 1000
NORM_ESTIMATE_ITERS = 200


@dataclass
class SolverState:
    """Mutable state of one run; owned by that run only."""

    xi_prev: GridVector
    xi_cur: GridVector
    x_prev: GridVector
    x_cur: GridVector
    gamma_tilde: float = 0.0
    alpha_prev: float = 0.0
    beta_prev: float = 0.0
    r_prev_norm: float = 0.0
    n: int = 0

    @classmethod
    def start(cls, xi0: GridVector, x0: GridVector) -> "SolverState":
        return cls(xi_prev=xi0, xi_cur=xi0, x_prev=x0, x_cur=x0)

    @property
    def momentum(self) -> GridVector:
        return self.xi_cur - self.xi_prev


def truth_error(
    prob: ForwardProblem, x: GridVector, truth: Optional[GridVector]
) -> Optional[float]:
    """||x - truth||, relative to ||truth|| when the problem reports relative errors."""
    if truth is None:
        return None
    err = (x - truth).norm()
    if prob.relative_error:
        truth_norm = truth.norm()
        if truth_norm > 0:
            return err / truth_norm
    return err


def domain_violation(prob: ForwardProblem, x: GridVector) -> Optional[str]:
    """Why ``x`` lies outside the problem domain, or None when it is inside."""
    try:
        inside = prob.domain_check(x)
    except DomainError as exc:
        return str(exc)
    return None if inside else f"outside the {prob.name} domain"


def resolve_operator_bound(
    prob: ForwardProblem, x0: GridVector, cfg: SolverConfig, L_bound: Optional[float]
) -> Optional[float]:
    """Operator bound for the constant step rule; power iteration when none is known."""
    if cfg.step_rule != StepRule.CONSTANT:
        return L_bound
    if L_bound is not None:
        return L_bound
    if prob.norm_bound is not None:
        return prob.norm_bound
    estimate = estimate_operator_norm(prob, x0, NORM_ESTIMATE_ITERS, seed=0)
    logger.info(f"No operator bound for {prob.name}; using power-iteration estimate {estimate:.6g}")
    return estimate


def _iterate(
    method: str,
    use_momentum: bool,
    prob: ForwardProblem,
    reg: Regularizer,
    y_delta: GridVector,
    delta: float,
    xi0: GridVector,
    cfg: SolverConfig,
    truth: Optional[GridVector],
    L_bound: Optional[float],
    callback: Optional[Callable[[SolverState, IterationRow], None]],
) -> Tuple[GridVector, RunRecord]:
    if delta < 0:
        raise ValueError(f"noise level must be nonnegative, got {delta}")

    cfg = cfg.for_problem(prob.eta)
    rule = StoppingRule(tau=cfg.tau, delta=delta, max_iter=cfg.max_iter)
    record = RunRecord(method=method, delta=delta, tau=cfg.tau)
    if use_momentum:
        cfg.check_feasibility(reg.sigma)
    if not cfg.record_truth_error:
        truth = None

    reg.reset()
    start = time.perf_counter()

    try:
        x0 = reg.conj_grad(xi0)
    except DomainError as exc:
        record.finish(StopReason.ABORTED, 0, f"initial point rejected: {exc}")
        logger.error(f"{method}: {record.message}")
        return xi0, record
    violation = domain_violation(prob, x0)
    if violation is not None:
        record.finish(StopReason.ABORTED, 0, f"initial point rejected: {violation}")
        logger.error(f"{method}: {record.message}")
        return x0, record
    L_bound = resolve_operator_bound(prob, x0, cfg, L_bound)

    state = SolverState.start(xi0, x0)
    stalled = False

    logger.info(
        f"{method}: start on {prob.name}, delta={delta:.3g}, tau={cfg.tau:g}, "
        f"rule={cfg.step_rule.value}, beta_cap={cfg.beta_cap:g}"
    )

    while True:
        n = state.n
        x = state.x_cur

        # (i) residual and discrepancy check
        try:
            r = prob.apply(x) - y_delta
        except DomainError as exc:
            record.finish(StopReason.ABORTED, n, f"forward solve failed at n={n}: {exc}")
            logger.error(f"{method}: {record.message}")
            break
        record.forward_evals += 1
        r_norm = r.norm()

        row = IterationRow(
            n=n,
            residual_norm=r_norm,
            truth_error=truth_error(prob, x, truth),
            elapsed=time.perf_counter() - start,
        )

        if not math.isfinite(r_norm):
            record.add_row(row)
            record.finish(StopReason.ABORTED, n, f"non-finite residual at n={n}")
            logger.error(f"{method}: {record.message}")
            break

        if rule.satisfied(r_norm):
            record.add_row(row)
            reason = StopReason.EXACT_ZERO_RESIDUAL if rule.exact_data else StopReason.DISCREPANCY
            record.finish(reason, n)
            break

        if stalled:
            record.add_row(row)
            record.finish(
                StopReason.ABORTED,
                n,
                f"zero gradient with nonzero residual at n={n - 1}; iteration cannot progress",
            )
            logger.error(f"{method}: {record.message}")
            break

        if n >= rule.max_iter:
            record.add_row(row)
            record.finish(StopReason.MAX_ITER, n, f"no stop after {rule.max_iter} iterations")
            logger.warning(f"{method}: {record.message} (residual {r_norm:.4g})")
            break

        # (ii) gradient and step size
        try:
            g = prob.lin_adjoint(x, r)
        except DomainError as exc:
            record.add_row(row)
            record.finish(StopReason.ABORTED, n, f"adjoint solve failed at n={n}: {exc}")
            logger.error(f"{method}: {record.message}")
            break
        alpha = step_size(r, g, cfg, L_bound)
        if g.is_zero():
            stalled = True
            logger.warning(f"{method}: zero gradient at n={n} with residual {r_norm:.4g}")

        # (iii)-(iv) surrogate and momentum
        beta = 0.0
        if use_momentum and n > 0:
            m = state.momentum
            state.gamma_tilde = gamma_tilde_update(
                m,
                state.x_cur,
                state.x_prev,
                state.alpha_prev,
                state.r_prev_norm,
                state.beta_prev,
                state.gamma_tilde,
                cfg.eta,
                delta,
            )
            beta = momentum_coefficient(alpha, g, m, state.gamma_tilde, reg.sigma, cfg.beta_cap)

        row.alpha = alpha
        row.beta = beta
        row.gamma_tilde = state.gamma_tilde
        record.add_row(row)
        if callback is not None:
            callback(state, row)

        if n % LOG_EVERY == 0:
            logger.debug(
                f"{method}: n={n} residual={r_norm:.6g} alpha={alpha:.4g} beta={beta:.4g}"
            )

        # (v) dual update and primal recovery
        xi_next = state.xi_cur - alpha * g
        if beta > 0:
            xi_next = xi_next + beta * state.momentum
        try:
            x_next = reg.conj_grad(xi_next)
        except DomainError as exc:
            record.finish(StopReason.ABORTED, n, f"conjugate map failed at n={n}: {exc}")
            logger.error(f"{method}: {record.message}")
            break
        violation = domain_violation(prob, x_next)
        if violation is not None:
            record.finish(StopReason.ABORTED, n, f"iterate {n + 1} left the domain: {violation}")
            logger.error(f"{method}: {record.message}")
            break

        state.xi_prev, state.xi_cur = state.xi_cur, xi_next
        state.x_prev, state.x_cur = state.x_cur, x_next
        state.alpha_prev = alpha
        state.beta_prev = beta
        state.r_prev_norm = r_norm
        state.n = n + 1

    record.elapsed_seconds = time.perf_counter() - start
    logger.info(
        f"{method}: {record.stop_reason.value} after {record.iterations} iterations "
        f"in {record.elapsed_seconds:.2f}s"
    )
    return state.x_cur, record


def ahb_solve(
    prob: ForwardProblem,
    reg: Regularizer,
    y_delta: GridVector,
    delta: float,
    xi0: GridVector,
    cfg: SolverConfig,
    truth: Optional[GridVector] = None,
    L_bound: Optional[float] = None,
    callback: Optional[Callable[[SolverState, IterationRow], None]] = None,
    method: str = "AHB",
) -> Tuple[GridVector, RunRecord]:
    """Adaptive heavy ball run from ``xi0``; returns the terminal iterate and its record.

    ``callback(state, row)`` is called once per non-terminal step, after the
    momentum coefficient is known and before the dual update.
    """
    return _iterate(method, True, prob, reg, y_delta, delta, xi0, cfg, truth, L_bound, callback)


def landweber_solve(
    prob: ForwardProblem,
    reg: Regularizer,
    y_delta: GridVector,
    delta: float,
    xi0: GridVector,
    cfg: SolverConfig,
    truth: Optional[GridVector] = None,
    L_bound: Optional[float] = None,
    callback: Optional[Callable[[SolverState, IterationRow], None]] = None,
    method: str = "Landweber",
) -> Tuple[GridVector, RunRecord]:
    """Landweber-type run (no momentum) from ``xi0``."""
    return _iterate(method, False, prob, reg, y_delta, delta, xi0, cfg, truth, L_bound, callback)
