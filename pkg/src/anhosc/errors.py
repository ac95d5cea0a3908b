"""Exception types shared across the package."""


class AnhoscError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(AnhoscError, ValueError):
    """Parameters violate a constructor or operation precondition."""


class DomainViolationError(AnhoscError, ValueError):
    """Coordinate lies outside the open domain of the model."""


class InadmissibleAlphaError(AnhoscError, ValueError):
    """Coherent-state eigenvalue would give a non-normalizable state."""


class TruncationError(AnhoscError, ValueError):
    """Grid does not cover the support of the wavefunction."""


class DivergenceError(AnhoscError, ArithmeticError):
    """ODE trajectory left the representable range (a pole was hit)."""


class UnsupportedFormError(AnhoscError, ValueError):
    """Generating-series form outside the supported dispatch table."""


class UnderdeterminedError(AnhoscError, ValueError):
    """Too few data points for the number of fit parameters."""


class SingularJacobianError(AnhoscError, RuntimeError):
    """Damped least squares could not make progress."""
