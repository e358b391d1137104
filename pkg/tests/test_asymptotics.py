import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loggas.asymptotics import (
    EULER_GAMMA,
    LN_C0,
    ZETA_PRIME_M1,
    Region,
    a0_average,
    a_of_v,
    barnes_b,
    big_theta0,
    big_theta1,
    bound_sandwich,
    classify_regime,
    fixedv_logdet,
    gue_gap_logdet,
    lambda_n_asymptotic,
    lambda_n_one_minus,
    m_density,
    m_integral,
    m_integral_detail,
    q_of_chi,
    stokes_lines,
    theorem1_logdet,
    theorem2_logdet,
    xi_k,
)
from loggas.elliptic import elliptic_data
from loggas.errors import InvalidArgument, RegimeError
from loggas.results import Regime, ScalePoint
from loggas.spectral import prolate_one_minus

from .conftest import oracle

mpmath.mp.dps = 30


def test_constants():
    assert ZETA_PRIME_M1 == pytest.approx(float(mpmath.zeta(-1, derivative=1)), abs=1e-16)
    assert EULER_GAMMA == pytest.approx(float(mpmath.euler), abs=1e-16)
    assert math.exp(LN_C0) == pytest.approx(0.645002448509577, rel=1e-14)


@pytest.mark.parametrize("v", [0.01, 0.5, 1.0, 3.0, 10.0, 40.0])
def test_barnes_b_against_barnes_g(v):
    z = 1j * v / math.pi
    ref = mpmath.log(mpmath.barnesg(1 + z) * mpmath.barnesg(1 - z))
    assert barnes_b(v) == pytest.approx(float(mpmath.re(ref)), rel=1e-12, abs=1e-15)
    assert barnes_b(v, k_terms=500) == pytest.approx(barnes_b(v), rel=1e-12, abs=1e-15)


def test_barnes_b_small_v():
    # ln b = (1 + gamma_E) x - x^2 (zeta(3) - 1)/2 ... ; leading term only
    v = 1e-3
    assert barnes_b(v) == pytest.approx((1 + EULER_GAMMA) * (v / math.pi) ** 2, rel=1e-6)
    assert barnes_b(0.0) == 0.0
    with pytest.raises(InvalidArgument):
        barnes_b(-1.0)


def test_a_of_v():
    v = 2.0
    x = (v / math.pi) ** 2
    assert a_of_v(v) == pytest.approx(2 * barnes_b(v) - x * (3 + 2 * math.log(math.pi / v)))


def test_fixed_v_converges():
    errs = [abs(fixedv_logdet(ScalePoint(s, 0.5)).log_det - oracle(s, v=0.5)) for s in (20.0, 40.0, 80.0)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-4
    r = fixedv_logdet(ScalePoint(40.0, 0.5))
    assert r.regime is Regime.FIXED_V and r.diagnostics["valid"]
    assert errs[1] < r.error_bound
    assert fixedv_logdet(ScalePoint(10.0, 0.0)).log_det == 0.0


@pytest.mark.parametrize("s", [4.0, 8.0, 16.0])
def test_gue_gap(s):
    r = gue_gap_logdet(s)
    assert abs(r.log_det - oracle(s, gamma=1.0)) < r.error_bound * 0.05


def test_lambda_n_one_minus_leading_order():
    s = 25.0
    exact = prolate_one_minus(s, 3)
    for n in range(3):
        approx = lambda_n_one_minus(n, s)
        assert abs(approx / exact[n] - 1) < 0.1 * (n + 1)
    assert lambda_n_one_minus(3, 0.5) == 1.0
    assert lambda_n_asymptotic(0, 25.0) < 1.0
    with pytest.raises(InvalidArgument):
        lambda_n_one_minus(-1, 3.0)


def test_q_of_chi_and_stokes():
    assert [q_of_chi(c) for c in (0.0, 0.1, 0.2499, 0.25, 0.5, 0.7499, 0.75, 1.3)] == [1, 1, 1, 2, 2, 2, 3, 4]
    lines = stokes_lines(100.0, 3)
    assert [q for q, _, _ in lines] == [1, 2, 3]
    assert lines[1][1] == 0.75
    assert lines[1][2] == pytest.approx(100 - 0.75 * math.log(100))
    with pytest.raises(InvalidArgument):
        stokes_lines(1.0, 2)


def test_theorem2_against_oracle():
    s = 12.0
    p = ScalePoint(s, s - 0.05 * math.log(s))
    r = theorem2_logdet(p)
    ref = oracle(s, v=p.v)
    assert abs(r.log_det - ref) / abs(ref) < 1e-3
    assert r.diagnostics["q_used"] == 1
    huge = theorem2_logdet(ScalePoint(12.0, 1e6))
    assert huge.log_det == pytest.approx(gue_gap_logdet(12.0).log_det)
    with pytest.raises(RegimeError):
        theorem2_logdet(ScalePoint(12.0, 6.0))
    with pytest.raises(RegimeError):
        theorem2_logdet(ScalePoint(2.0, 2.0))


@pytest.mark.parametrize("kappa", [0.2, 0.5, 0.8])
def test_xi_theta_identities(kappa):
    ed = elliptic_data(kappa)
    x = np.linspace(-1, 1, 23)
    assert np.abs(xi_k(1, x, ed) + xi_k(0, x, ed)).max() < 1e-10
    assert np.abs(xi_k(2, x, ed) - xi_k(3, x, ed)).max() < 1e-10
    assert np.abs(big_theta1(x, ed) - big_theta0(x, ed)).max() < 1e-10
    assert isinstance(xi_k(0, 0.3, ed), float)
    with pytest.raises(InvalidArgument):
        xi_k(4, 0.0, ed)


@settings(max_examples=20, deadline=None)
@given(st.floats(-2, 2), st.sampled_from([0.1, 0.3, 0.6, 0.9]))
def test_m_density_periodic(x, kappa):
    assert m_density(x + 1.0, kappa) == pytest.approx(m_density(x, kappa), abs=1e-10)


def test_a0_average_converged_and_small_at_small_kappa():
    assert a0_average(0.3, n=64) == pytest.approx(a0_average(0.3, n=128), abs=1e-12)
    assert abs(a0_average(1e-4)) < abs(a0_average(0.3))
    assert np.asarray(a0_average([0.2, 0.4])).shape == (2,)


def test_m_integral_bounded_and_small_at_small_kappa():
    vals = [m_integral(s, k * s) for s in (15.0, 25.0) for k in (0.2, 0.5, 0.8)]
    assert max(abs(v) for v in vals) < 5
    d = m_integral_detail(20.0, 1.0)
    assert abs(d.value) < 1e-3
    assert d.remainder < 1e-4
    assert d.value == pytest.approx(d.oscillatory + d.averaged)


def test_m_integral_panel_refinement():
    a = m_integral_detail(20.0, 8.0)
    b = m_integral_detail(20.0, 8.0, dx=0.125, order=12)
    assert abs(a.value - b.value) < 1e-10


@pytest.mark.parametrize("kappa", [0.2, 0.4, 0.6, 0.8])
def test_theorem1_against_oracle(kappa):
    s = 12.0
    p = ScalePoint.from_kappa(s, kappa)
    r = theorem1_logdet(p)
    ref = oracle(s, v=p.v)
    assert abs(r.log_det - ref) < 1e-3
    assert abs(r.log_det - ref) < r.error_bound
    bare = theorem1_logdet(p, with_correction=False)
    assert bare.diagnostics["m_integral"] == 0.0


def test_theta4_variant_is_worse():
    worse = 0
    for kappa in (0.3, 0.5, 0.7):
        p = ScalePoint.from_kappa(15.0, kappa)
        ref = oracle(15.0, v=p.v)
        e3 = abs(theorem1_logdet(p).log_det - ref)
        e4 = abs(theorem1_logdet(p, use_theta4=True).log_det - ref)
        worse += e4 > e3
    assert worse == 3
    assert theorem1_logdet(ScalePoint(15.0, 6.0), use_theta4=True).regime is Regime.BULK_THETA4


def test_theorem1_regime_checks():
    with pytest.raises(RegimeError):
        theorem1_logdet(ScalePoint(10.0, 9.8))
    with pytest.raises(RegimeError):
        theorem1_logdet(ScalePoint(10.0, 0.0))


def test_theorem1_meets_fixed_v():
    p = ScalePoint(100.0, 1.0)
    assert abs(theorem1_logdet(p).log_det - fixedv_logdet(p).log_det) < 0.01


def test_classify_regime():
    assert classify_regime(ScalePoint(100.0, 100.0 - 0.05 * math.log(100.0))).region is Region.DIAGONAL
    assert classify_regime(ScalePoint(100.0, 50.0)).region is Region.REGION_I
    assert classify_regime(ScalePoint(100.0, 1.0)).region is Region.REGION_II
    assert classify_regime(ScalePoint(100.0, 10.0)).region is Region.GAP
    with pytest.raises(InvalidArgument):
        classify_regime(ScalePoint(10.0, 1.0), eps=1.5)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 15), st.floats(0.0, 0.99))
def test_bound_sandwich(s, frac):
    s = float(s)
    p = ScalePoint(s, frac * min(s, 12.0))
    lo, hi = bound_sandwich(p)
    o = oracle(s, v=p.v)
    assert lo - 1e-12 <= o <= hi + 1e-12
