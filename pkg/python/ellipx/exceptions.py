class EllipxError(Exception):
    pass


class EllipticDomainError(EllipxError, ValueError):
    """Parameter or argument outside the domain of an operation."""


class PoleError(EllipxError, ZeroDivisionError):
    """Ratio function evaluated too close to a pole."""


class ConvergenceError(EllipxError, RuntimeError):
    """An iteration, series or quadrature hit its cap."""


class BracketError(EllipxError, ValueError):
    """Root finding interval without a sign change."""


class ConsistencyError(EllipxError, RuntimeError):
    """A quantity that cannot vanish analytically came out (numerically) zero."""


class UsageError(EllipxError, ValueError):
    """Command-line option missing or malformed."""
