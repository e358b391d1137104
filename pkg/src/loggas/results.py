"""Result containers shared by the oracle and the asymptotic formulas."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import InvalidArgument


class Regime(str, enum.Enum):
    ORACLE = "Oracle"
    FIXED_V = "FixedV"
    BULK = "BulkTheorem1"
    BULK_THETA4 = "BulkDysonTheta4"
    DIAGONAL = "DiagonalTheorem2"
    GUE = "GUEGap"


@dataclass(frozen=True)
class LogDetResult:
    """ln det(I - gamma K_s) together with its provenance."""

    log_det: float
    regime: Regime
    error_bound: Optional[float] = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def det(self) -> float:
        return math.exp(self.log_det)


@dataclass(frozen=True)
class ScalePoint:
    """A point (s, v) with the derived kappa = v/s and gamma = 1 - exp(-2v)."""

    s: float
    v: float

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise InvalidArgument(f"s must be positive and finite, got {self.s!r}")
        if not (self.v >= 0):
            raise InvalidArgument(f"v must be >= 0, got {self.v!r}")

    @classmethod
    def from_kappa(cls, s: float, kappa: float) -> "ScalePoint":
        return cls(s, kappa * s)

    @property
    def kappa(self) -> float:
        return self.v / self.s

    @property
    def gamma(self) -> float:
        return -math.expm1(-2.0 * self.v)
