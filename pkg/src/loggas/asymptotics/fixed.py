"""Fixed-v and hard-gap (gamma = 1) asymptotics."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta

from ..errors import InvalidArgument
from ..results import LogDetResult, Regime, ScalePoint
from .constants import EULER_GAMMA, LN_C0

# remainder constants (c_1 v + c_2 v^3)/s reported with the fixed-v formula
FIXEDV_C1 = 1.0
FIXEDV_C2 = 1.0


def barnes_b(v: float, k_terms: int | None = None) -> float:
    """ln b(v) with b(v) = e^{(1+gamma_E) x} prod_k (1 + x/k^2)^k e^{-x/k}, x = v^2/pi^2.

    The first K factors are summed directly; the tail sum over k > K is the
    convergent series sum_{j>=2} (-1)^{j+1} x^j/j * zeta(2j-1, K+1).
    """
    if not (v >= 0):
        raise InvalidArgument(f"v must be >= 0, got {v!r}")
    if v == 0:
        return 0.0
    x = (v / math.pi) ** 2
    kk = k_terms or max(64, int(4.0 * math.sqrt(x)) + 1)
    k = np.arange(1, kk + 1, dtype=float)
    head = float(np.sum(k * np.log1p(x / (k * k)) - x / k))
    tail = 0.0
    ratio = x / (kk + 1.0) ** 2
    for j in range(2, 200):
        term = (-1) ** (j + 1) * x**j / j * float(zeta(2 * j - 1, kk + 1))
        tail += term
        if abs(term) < 1e-17 * max(1.0, abs(head)) or ratio**j < 1e-18:
            break
    return (1.0 + EULER_GAMMA) * x + head + tail


def a_of_v(v: float) -> float:
    """A(v) = 2 ln b(v) - (v^2/pi^2)(3 + 2 ln(pi/v))."""
    if not (v > 0):
        raise InvalidArgument(f"v must be > 0, got {v!r}")
    x = (v / math.pi) ** 2
    return 2.0 * barnes_b(v) - x * (3.0 + 2.0 * math.log(math.pi / v))


def fixedv_logdet(p: ScalePoint) -> LogDetResult:
    """-4vs/pi + (2v^2/pi^2) ln(4s) + 2 ln b(v), accurate for v small against s^{1/3}."""
    s, v = p.s, p.v
    if v == 0:
        return LogDetResult(0.0, Regime.FIXED_V, 0.0, {"valid": True})
    val = -4.0 * v * s / math.pi + 2.0 * (v / math.pi) ** 2 * math.log(4.0 * s) + 2.0 * barnes_b(v)
    bound = (FIXEDV_C1 * v + FIXEDV_C2 * v**3) / s
    return LogDetResult(val, Regime.FIXED_V, bound, {"valid": v < s ** (1.0 / 3.0)})


def gue_gap_logdet(s: float) -> LogDetResult:
    """-s^2/2 - (1/4) ln s + ln c_0: the probability of an empty interval."""
    if not (s > 0):
        raise InvalidArgument(f"s must be positive, got {s!r}")
    val = -0.5 * s * s - 0.25 * math.log(s) + LN_C0
    return LogDetResult(val, Regime.GUE, 1.0 / s, {"ln_c0": LN_C0})
