"""Numerical toolkit for the sine-kernel Fredholm determinant det(I - gamma K_s).

Layers: ``numerics`` (quadrature, roots, eigenvalues), ``theta`` (Jacobi
theta functions), ``elliptic`` (the genus-one data a, t, V, gamma_c as
functions of kappa = v/s), ``spectral`` (Nystrom oracle) and
``asymptotics`` (closed-form regimes). ``cli`` wires them to a command line.
"""

from .errors import (
    AccuracyFailure,
    DiscretizationError,
    InternalConsistencyError,
    InvalidArgument,
    LoggasError,
    PoleError,
    PrecisionDomainError,
    RegimeError,
    ResourceError,
)
from .results import LogDetResult, Regime, ScalePoint

__version__ = "0.1.0"

__all__ = [
    "AccuracyFailure",
    "DiscretizationError",
    "InternalConsistencyError",
    "InvalidArgument",
    "LogDetResult",
    "LoggasError",
    "PoleError",
    "PrecisionDomainError",
    "Regime",
    "RegimeError",
    "ResourceError",
    "ScalePoint",
    "__version__",
]
