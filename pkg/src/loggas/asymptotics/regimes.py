"""Which asymptotic description applies at (s, v), and the elementary bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ..errors import InvalidArgument
from ..results import ScalePoint


class Region(str, enum.Enum):
    REGION_I = "region_i"
    REGION_II = "region_ii"
    DIAGONAL = "diagonal_band"
    GAP = "gap"


@dataclass(frozen=True)
class RegimeClassification:
    region: Region
    eps: float
    delta: float
    chi: float


def classify_regime(p: ScalePoint, eps: float = 0.2, delta: float = 0.1, chi: float = 0.1) -> RegimeClassification:
    """Tag (s, v); overlaps resolve as diagonal_band > region_i > region_ii."""
    if not (0 < eps < 1 and 0 < delta < 1 and chi >= 0):
        raise InvalidArgument(f"bad regime parameters eps={eps}, delta={delta}, chi={chi}")
    s, v = p.s, p.v
    if s > 1 and p.kappa >= 1.0 - chi * math.log(s) / s:
        region = Region.DIAGONAL
    elif s ** (1.0 - eps) <= v <= (1.0 - delta) * s:
        region = Region.REGION_I
    elif v < s ** (1.0 / 3.0):
        region = Region.REGION_II
    else:
        region = Region.GAP
    return RegimeClassification(region, eps, delta, chi)


def bound_sandwich(p: ScalePoint) -> tuple[float, float]:
    """(-4vs/pi, -2 s gamma/pi): lower and upper bounds on ln det(I - gamma K_s)."""
    return -4.0 * p.v * p.s / math.pi, -2.0 * p.s * p.gamma / math.pi
