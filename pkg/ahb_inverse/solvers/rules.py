"""Step-size, momentum and surrogate rules shared by the Landweber-type solvers."""

import math
from typing import Optional

from ..core.errors import ConfigurationError
from ..core.models import SolverConfig, StepRule
from ..core.spaces import GridVector


def step_size(
    r: GridVector,
    g: GridVector,
    cfg: SolverConfig,
    L_bound: Optional[float] = None,
) -> float:
    """alpha_n under the configured rule.

    Constant: mu0 / L^2. Adaptive: min(mu0 ||r||^2 / ||g||^2, mu1), and mu1
    when g = 0. A zero residual gives a zero step.
    """
    if cfg.step_rule == StepRule.CONSTANT:
        if L_bound is None or not L_bound > 0 or not math.isfinite(L_bound):
            raise ConfigurationError(
                f"constant step rule needs a positive finite operator bound, got {L_bound}"
            )
        if r.is_zero():
            return 0.0
        return cfg.mu0 / (L_bound * L_bound)

    if r.is_zero():
        return 0.0
    g_norm_sq = g.inner(g)
    if g_norm_sq == 0:
        return cfg.mu1
    return min(cfg.mu0 * r.inner(r) / g_norm_sq, cfg.mu1)


def gamma_tilde_update(
    m: GridVector,
    x_cur: GridVector,
    x_prev: GridVector,
    alpha_prev: float,
    r_prev_norm: float,
    beta_prev: float,
    gamma_prev: float,
    eta: float,
    delta: float,
) -> float:
    """Computable upper surrogate for <m_n, x_n - x_hat>."""
    return (
        m.inner(x_cur - x_prev)
        - (1.0 - eta) * alpha_prev * r_prev_norm**2
        + (1.0 + eta) * alpha_prev * delta * r_prev_norm
        + beta_prev * gamma_prev
    )


def momentum_coefficient(
    alpha: float,
    g: GridVector,
    m: GridVector,
    gamma_tilde: float,
    sigma: float,
    beta_cap: float,
) -> float:
    """beta_n = min(max(0, (alpha <g, m> - 2 sigma gamma_tilde) / ||m||^2), beta_cap); 0 when m = 0."""
    m_norm_sq = m.inner(m)
    if m_norm_sq == 0:
        return 0.0
    beta = (alpha * g.inner(m) - 2.0 * sigma * gamma_tilde) / m_norm_sq
    return min(max(0.0, beta), beta_cap)
