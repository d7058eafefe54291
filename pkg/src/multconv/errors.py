"""Exception types raised across the package."""


class MultconvError(ValueError):
    """Base class for validation errors."""


class DimensionError(MultconvError):
    pass


class OrderCapError(MultconvError):
    """Raised when a derivative order exceeds the configured cap."""


class DomainError(MultconvError):
    """Input lies outside the domain an operation is defined on (e.g. not in Q+)."""


class JetOrderError(MultconvError):
    pass


class NumericalError(ArithmeticError):
    """Numeric failure such as root finding not converging."""
