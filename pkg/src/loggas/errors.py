"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class LoggasError(Exception):
    """Base class for all errors raised by loggas."""


class InvalidArgument(LoggasError, ValueError):
    pass


class AccuracyFailure(LoggasError):
    """A refinement loop gave up before reaching its tolerance.

    ``estimate`` holds the best value found and ``residual`` the last
    change between successive refinements.
    """

    def __init__(self, message: str, estimate: float = float("nan"), residual: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class InternalConsistencyError(LoggasError):
    def __init__(self, identity: str, residual: float):
        super().__init__(f"identity {identity!r} violated: residual {residual:.3e}")
        self.identity = identity
        self.residual = residual


class PrecisionDomainError(LoggasError):
    """The requested evaluation is beyond what double precision can resolve."""

    def __init__(self, message: str, max_v: float | None = None):
        super().__init__(message)
        self.max_v = max_v


class DiscretizationError(LoggasError):
    pass


class RegimeError(LoggasError):
    pass


class PoleError(LoggasError):
    def __init__(self, message: str, location: complex | None = None):
        super().__init__(message)
        self.location = location


class ResourceError(LoggasError):
    pass
