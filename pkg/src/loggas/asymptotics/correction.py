"""The O(1/s) correction density M(x, kappa) and its logarithmic integral.

With c = i gamma_c, tau = i t and d = -i t/4 all theta combinations are
assembled in complex arithmetic; the results are real up to rounding and
that is asserted before the imaginary part is dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..elliptic import EllipticData, dtau_dkappa, elliptic_data, slow_table
from ..errors import AccuracyFailure, InternalConsistencyError, InvalidArgument, PoleError
from ..numerics import gauss_legendre
from ..theta import theta_batch

IMAG_TOL = 1e-10
POLE_TOL = 1e-14


def _real(z: np.ndarray, what: str) -> np.ndarray:
    scale = np.maximum(1.0, np.abs(z.real))
    resid = float(np.max(np.abs(z.imag) / scale, initial=0.0))
    if resid > IMAG_TOL:
        raise InternalConsistencyError(f"{what} is real", resid)
    return z.real


def _shifted(k: int, x, t):
    """theta_k at x + d, x - d and d, with d = -i t/4 (value, d1, d2 each)."""
    d = -0.25j * t
    return theta_batch(k, x + d, t), theta_batch(k, x - d, t), theta_batch(k, d, t)


def _xi(k: int, x, t, th3x=None):
    (p, _, _), (m, _, _), (dd, _, _) = _shifted(k, x, t)
    if np.any(np.abs(dd) < POLE_TOL):
        raise PoleError(f"theta_{k}(d) vanishes", location=complex(np.ravel(-0.25j * np.asarray(t))[0]))
    th30 = theta_batch(3, 0.0 * np.asarray(x), t)[0]
    if th3x is None:
        th3x = theta_batch(3, x, t)[0]
    return 2.0 * th30**2 / th3x**2 * p * m / dd**2


def _big_theta(k: int, x, a, t, gc):
    if k not in (0, 1):
        raise InvalidArgument("Theta is defined for k = 0 and k = 1")
    (pv, pd1, pd2), (mv, md1, md2), (dv, dd1, dd2) = _shifted(k, x, t)
    bad = np.abs(pv * mv * dv) < POLE_TOL
    if np.any(bad):
        loc = complex(np.ravel(np.broadcast_to(x, bad.shape)[bad])[0])
        raise PoleError(f"theta_{k} vanishes near x={loc}", location=loc)
    c = 1j * gc
    lp, lm, ld = pd1 / pv, md1 / mv, dd1 / dv
    sp, sm = pd2 / pv, md2 / mv
    ld_prime = dd2 / dv - ld * ld
    sign = -1.0 if k == 0 else 1.0
    return (
        5.0 * c * c * (sp - 2.0 * ld_prime + sm)
        + 14.0 * c * c * lm * lp
        - 4.0 * c * c * (lm + ld - lp) * ld
        + sign * 2.0 * c * (1.0 + a) * (lp - 2.0 * ld - lm)
        - 2.0 * (2.0 + a)
    )


def xi_k(k: int, x, ed: EllipticData):
    """Xi_k(x) = 2 theta_3(0)^2/theta_3(x)^2 * theta_k(x+d) theta_k(x-d)/theta_k(d)^2."""
    if k not in (0, 1, 2, 3):
        raise InvalidArgument(f"k must be 0..3, got {k!r}")
    xa = np.asarray(x, dtype=float)
    out = _real(_xi(k, xa, ed.t), f"Xi_{k}")
    return float(out) if out.ndim == 0 else out


def big_theta0(x, ed: EllipticData):
    """Theta_0(x): log-derivative combination of theta_0 at x +- d and d."""
    out = _real(_big_theta(0, np.asarray(x, dtype=float), ed.a, ed.t, ed.gamma_c), "Theta_0")
    return float(out) if out.ndim == 0 else out


def big_theta1(x, ed: EllipticData):
    """Theta_1(x), the theta_1 counterpart of Theta_0 (equal to it identically)."""
    out = _real(_big_theta(1, np.asarray(x, dtype=float), ed.a, ed.t, ed.gamma_c), "Theta_1")
    return float(out) if out.ndim == 0 else out


def _m_core(x, kappa, a, t, gc, dtdk):
    """M(x, kappa) for arrays of x and the slow variables, broadcast together."""
    th3, _, th3dd = theta_batch(3, x, t)
    xi0 = _xi(0, x, t, th3)
    xi2 = _xi(2, x, t, th3)
    big = _big_theta(0, x, a, t, gc)
    smooth = (xi0 * big + 6.0 * a * xi2) / (48.0 * a * (1.0 + a))
    # (i/4pi) kappa theta_3''/theta_3 * d tau/d kappa with d tau = i dt
    drift = -(kappa / (4.0 * math.pi)) * (th3dd / th3) * dtdk
    return _real(smooth + drift, "M")


def m_density(x, kappa: float, ed: EllipticData | None = None, dtdk: float | None = None):
    """M(x, kappa), 1-periodic in x; d tau/d kappa by finite differences unless given."""
    if not (0.0 < kappa < 1.0):
        raise InvalidArgument(f"kappa must lie in (0, 1), got {kappa!r}")
    ed = ed or elliptic_data(kappa)
    if dtdk is None:
        dtdk = dtau_dkappa(kappa)
    out = _m_core(np.asarray(x, dtype=float), kappa, ed.a, ed.t, ed.gamma_c, dtdk)
    return float(out) if out.ndim == 0 else out


def _table_for(kappa: float):
    top = max(0.95, math.ceil(kappa * 1000.0) / 1000.0)
    return slow_table(min(top, 0.999))


def _a0_batch(u: np.ndarray, n: int) -> np.ndarray:
    sv = _table_for(float(np.max(u)))(u)
    x = np.arange(n) / n
    xx = x[None, :]
    col = lambda q: q[:, None]  # noqa: E731
    m = _m_core(xx, col(u), col(sv["a"]), col(sv["t"]), col(sv["gamma_c"]), col(sv["dtdk"]))
    return m.mean(axis=1)


def a0_average(u, n: int = 64):
    """a_0(u) = int_0^1 M(x, u) dx by the periodic trapezoid rule with ``n`` points."""
    ua = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(ua <= 0) or np.any(ua >= 1):
        raise InvalidArgument("u must lie in (0, 1)")
    if np.all(ua >= slow_table().kappa_min):
        out = _a0_batch(ua, n)
    else:
        out = np.array([_m_core(np.arange(n) / n, uu, *_direct(uu)).mean() for uu in ua])
    return float(out[0]) if np.ndim(u) == 0 else out


def _direct(u: float):
    ed = elliptic_data(u, check=False, ell=False)
    return ed.a, ed.t, ed.gamma_c, dtau_dkappa(u)


@dataclass(frozen=True)
class MIntegral:
    value: float
    oscillatory: float
    averaged: float
    remainder: float
    panels: int
    u_switch: float


def _averaged_part(u_lo: float, u_hi: float, n_x: int = 64) -> float:
    """int_{u_lo}^{u_hi} a_0(u) du/u, Gauss-Legendre panels in ln u."""
    if u_hi <= u_lo:
        return 0.0
    w0, w1 = math.log(u_lo), math.log(u_hi)
    npan = max(2, int(math.ceil((w1 - w0) / 1.0)))
    rule = gauss_legendre(16)
    edges = np.linspace(w0, w1, npan + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    w = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
    wts = (half[:, None] * rule.weights[None, :]).ravel()
    return float(np.dot(wts, _a0_batch(np.exp(w), n_x)))


def m_integral_detail(
    s: float,
    v: float,
    dx: float = 0.25,
    order: int = 8,
    u_switch: float | None = None,
    max_panels: int = 400_000,
) -> MIntegral:
    """int_0^kappa M((v/u) V(u), u) du/u with its pieces.

    On [u_switch, kappa] the integrand is sampled in y = 1/u, where the
    phase x = v y V(1/y) has slope -2 v gamma_c, on Gauss-Legendre panels
    covering at most ``dx`` in x. Below u_switch the oscillating factor is
    replaced by its x-average a_0(u); by one integration by parts the
    neglected part is O(u_switch^2 / v). The tail below the table range
    (kappa ~ 1e-7) is dropped and estimated by |a_0| there.
    """
    if not (s > 0 and v > 0):
        raise InvalidArgument(f"need s > 0 and v > 0, got s={s!r}, v={v!r}")
    kappa = v / s
    if not (kappa < 1.0):
        raise InvalidArgument(f"kappa = v/s must be < 1, got {kappa}")
    table = _table_for(kappa)
    if u_switch is None:
        u_switch = min(0.02, 0.01 * math.sqrt(v))
    u_sw = min(kappa, u_switch)

    osc, panels = 0.0, 0
    if kappa > u_sw:
        y0, y1 = 1.0 / kappa, 1.0 / u_sw
        # |dx/dy| = 2 v gamma_c <= 2 v / pi
        panels = int(math.ceil((y1 - y0) * 2.0 * v / math.pi / dx))
        if panels > max_panels:
            raise AccuracyFailure(f"m_integral needs {panels} panels (budget {max_panels})")
        rule = gauss_legendre(order)
        edges = np.linspace(y0, y1, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        y = (mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel()
        wts = (half[:, None] * rule.weights[None, :]).ravel()
        u = 1.0 / y
        sv = table(u)
        x = v * sv["V"] * y
        m = _m_core(x, u, sv["a"], sv["t"], sv["gamma_c"], sv["dtdk"])
        osc = float(np.dot(wts, m / y))

    u_lo = table.kappa_min
    avg = _averaged_part(u_lo, u_sw)
    rem = abs(float(_a0_batch(np.array([u_lo]), 64)[0]))
    return MIntegral(osc + avg, osc, avg, rem, panels, u_sw)


def m_integral(s: float, v: float, **kw) -> float:
    """int_s^inf M(t V(v/t), v/t) dt/t, bounded uniformly for kappa <= 1 - delta."""
    return m_integral_detail(s, v, **kw).value
