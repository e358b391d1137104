"""Bulk regime: s^{1-eps} <= v <= (1-delta) s."""

from __future__ import annotations

import math

from ..elliptic import elliptic_data
from ..errors import RegimeError
from ..results import LogDetResult, Regime, ScalePoint
from ..theta import theta_k
from .correction import m_integral_detail
from .fixed import a_of_v

# |J(s, v)| <= C_ERR s^{-1/4} ln s; only existence of the constant is known
C_ERR = 2.0
DELTA = 0.05


def theorem1_logdet(
    p: ScalePoint,
    use_theta4: bool = False,
    delta: float = DELTA,
    c_err: float = C_ERR,
    with_correction: bool = True,
) -> LogDetResult:
    """-(s^2/2)(1-a^2) + v s V + ln theta_3(sV | i t) + int M + A(v).

    ``use_theta4`` replaces theta_3(sV) by theta_4(sV) = theta_3(sV - 1/2)
    in the oscillating term (the correction integral is left unchanged);
    this variant exists only for comparison.
    """
    s, v, kappa = p.s, p.v, p.kappa
    if not (0.0 < kappa <= 1.0 - delta):
        raise RegimeError(f"kappa = {kappa:.6g} outside (0, {1.0 - delta:.6g}]")
    ed = elliptic_data(kappa)
    x = s * ed.V
    shift = -0.5 if use_theta4 else 0.0
    th = theta_k(3, x + shift, ed.t).value
    ln_theta = math.log(float(th.real))
    smooth = -0.5 * s * s * (1.0 - ed.a**2) + v * s * ed.V
    corr = m_integral_detail(s, v) if with_correction else None
    m_val = corr.value if corr else 0.0
    val = smooth + ln_theta + m_val + a_of_v(v)
    bound = c_err * s ** (-0.25) * math.log(s) if s > 1 else float("inf")
    diag = {
        "a": ed.a,
        "V": ed.V,
        "t": ed.t,
        "gamma_c": ed.gamma_c,
        "sV_mod_1": x % 1.0,
        "ln_theta": ln_theta,
        "m_integral": m_val,
        "m_remainder": corr.remainder if corr else None,
        "A": a_of_v(v),
        "region_i_lower": s ** 0.8,
    }
    return LogDetResult(val, Regime.BULK_THETA4 if use_theta4 else Regime.BULK, bound, diag)
