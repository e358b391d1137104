"""Closed-form asymptotics of ln det(I - gamma K_s) in the various scaling regimes."""

from .bulk import C_ERR, theorem1_logdet
from .constants import EULER_GAMMA, LN_C0, ZETA_PRIME_M1
from .correction import (
    MIntegral,
    a0_average,
    big_theta0,
    big_theta1,
    m_density,
    m_integral,
    m_integral_detail,
    xi_k,
)
from .diagonal import lambda_n_asymptotic, lambda_n_one_minus, q_of_chi, stokes_lines, theorem2_logdet
from .fixed import a_of_v, barnes_b, fixedv_logdet, gue_gap_logdet
from .regimes import Region, RegimeClassification, bound_sandwich, classify_regime

__all__ = [
    "C_ERR",
    "EULER_GAMMA",
    "LN_C0",
    "ZETA_PRIME_M1",
    "MIntegral",
    "Region",
    "RegimeClassification",
    "a0_average",
    "a_of_v",
    "barnes_b",
    "big_theta0",
    "big_theta1",
    "bound_sandwich",
    "classify_regime",
    "fixedv_logdet",
    "gue_gap_logdet",
    "lambda_n_asymptotic",
    "lambda_n_one_minus",
    "m_density",
    "m_integral",
    "m_integral_detail",
    "q_of_chi",
    "stokes_lines",
    "theorem1_logdet",
    "theorem2_logdet",
    "xi_k",
]
