"""Exception hierarchy shared across the package."""


class CavityJTError(Exception):
    """Base class for all package errors."""


class ConfigError(CavityJTError):
    """Invalid or inconsistent configuration input."""


class NumericalGuardError(CavityJTError):
    """A runtime numerical guard tripped (norm drift, boundary wrap, ...)."""


class PropagationError(NumericalGuardError):
    """Wave-packet propagation aborted by a guard."""


class QuadratureError(NumericalGuardError):
    """Loop quadrature failed to converge within the refinement budget."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class TruncationError(NumericalGuardError):
    """A basis truncation lost more probability than tolerated."""

    def __init__(self, message, loss=None):
        super().__init__(message)
        self.loss = loss


class ValidationFailure(CavityJTError):
    """A cross-validation check (grid vs Fock) fell below its threshold."""
