"""Near-diagonal regime kappa >= 1 - chi ln(s)/s, anchored on the hard gap."""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidArgument, RegimeError
from ..results import LogDetResult, Regime, ScalePoint
from .fixed import gue_gap_logdet


def lambda_n_one_minus(n: int, s: float) -> float:
    """Leading-order 1 - lambda_n(s) = (sqrt(pi)/n!) 2^{3n+2} s^{n+1/2} e^{-2s}, capped at 1."""
    if n < 0 or int(n) != n:
        raise InvalidArgument(f"n must be a non-negative integer, got {n!r}")
    if not (s > 0):
        raise InvalidArgument(f"s must be positive, got {s!r}")
    log_om = 0.5 * math.log(math.pi) - math.lgamma(n + 1.0) + (3 * n + 2) * math.log(2.0) + (n + 0.5) * math.log(s) - 2.0 * s
    return min(1.0, math.exp(log_om))


def lambda_n_asymptotic(n: int, s: float) -> float:
    """Leading-order lambda_n(s), clamped to [0, 1)."""
    return min(max(1.0 - lambda_n_one_minus(n, s), 0.0), float(np.nextafter(1.0, 0.0)))


def q_of_chi(chi: float) -> int:
    """Number of eigenvalue factors kept: 1 if chi < 1/4, else the least integer > 2 chi + 1/2."""
    if not math.isfinite(chi):
        raise InvalidArgument(f"chi must be finite, got {chi!r}")
    if chi < 0.25:
        return 1
    return int(math.floor(2.0 * chi + 0.5)) + 1


def stokes_lines(s: float, q_max: int) -> list[tuple[int, float, float]]:
    """(q, chi_q, v_q) with chi_q = q/2 - 1/4 and v_q = s - chi_q ln s."""
    if not (s > 1):
        raise InvalidArgument(f"need s > 1, got {s!r}")
    if q_max < 1:
        raise InvalidArgument(f"need q_max >= 1, got {q_max!r}")
    out = []
    for q in range(1, q_max + 1):
        chi = 0.5 * q - 0.25
        out.append((q, chi, s - chi * math.log(s)))
    return out


def theorem2_logdet(p: ScalePoint, chi: float = 0.1) -> LogDetResult:
    """Hard-gap asymptotics plus sum_{j<q} ln(1 + e^{-2v} lambda_j / (1 - lambda_j))."""
    s, v = p.s, p.v
    if s < 3:
        raise RegimeError(f"need s >= 3, got {s}")
    if chi < 0:
        raise InvalidArgument(f"chi must be >= 0, got {chi!r}")
    edge = 1.0 - chi * math.log(s) / s
    if p.kappa < edge:
        raise RegimeError(f"kappa = {p.kappa:.6g} below the diagonal band edge {edge:.6g}")
    q = q_of_chi(chi)
    base = gue_gap_logdet(s).log_det
    corr = 0.0
    if math.isfinite(v):
        for j in range(q):
            om = lambda_n_one_minus(j, s)
            # e^{-2v} lambda/(1 - lambda) in logs to keep huge v and tiny om safe
            log_ratio = -2.0 * v + math.log1p(-om) - math.log(om) if om < 1.0 else -math.inf
            corr += math.log1p(math.exp(log_ratio)) if log_ratio < 30 else log_ratio + math.log1p(math.exp(-log_ratio))
    err = max(s ** (-(q - 2.0 * chi - 0.5)), 1.0 / s)
    return LogDetResult(base + corr, Regime.DIAGONAL, err, {"q_used": q, "chi": chi, "correction": corr})
