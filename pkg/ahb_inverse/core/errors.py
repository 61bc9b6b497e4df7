"""Exception hierarchy for ahb-inverse."""


class AhbError(Exception):
    """Base class for all library errors."""


class ConfigurationError(AhbError, ValueError):
    """Invalid solver, problem or experiment parameters."""


class UnsupportedCombinationError(AhbError, ValueError):
    """Method, problem and regularizer cannot be combined."""


class DomainError(AhbError):
    """An iterate left the domain of the forward problem."""


class InfeasiblePointError(AhbError, ValueError):
    """Comparison point with non-finite regularizer value."""


class NoiseLevelError(AhbError, ValueError):
    """Noise level is negative or undefined for the given data."""
