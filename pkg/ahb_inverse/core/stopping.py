"""Discrepancy-principle stopping rule."""

from pydantic import BaseModel, ConfigDict, Field

DEFAULT_MAX_ITER = 100_000


class StoppingRule(BaseModel):
    """Stop at the first n with ||F(x_n) - y_delta|| <= tau * delta.

    With ``delta == 0`` the rule only fires on an exactly zero residual.
    ``max_iter`` is a safety cap; reaching it is reported, never treated as
    convergence.
    """

    model_config = ConfigDict(frozen=True)

    tau: float = Field(gt=1.0)
    delta: float = Field(ge=0.0)
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=1)

    @property
    def threshold(self) -> float:
        return self.tau * self.delta

    def satisfied(self, residual_norm: float) -> bool:
        return residual_norm <= self.tau * self.delta

    @property
    def exact_data(self) -> bool:
        return self.delta == 0
