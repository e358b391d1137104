"""Genus-one data attached to the double-scaling ratio kappa = v/s.

The branch point ``a`` solves  int_a^1 sqrt((mu^2-a^2)/(1-mu^2)) dmu = kappa.
Everything purely imaginary in the asymptotic formulas is stored as a
positive real number:

    c   = i * gamma_c        (normalisation of the holomorphic differential)
    tau = i * t              (theta module, nome q = exp(-pi t))
    d   = -tau/4 = -i t/4    (theta shift; ``d_quarter`` holds t/4)

All period integrals are done by Gauss-Legendre after a substitution that
makes the integrand smooth. Integrals over the gap (-a, a) use
w = a - mu = (1-a) sinh(y)^2, which keeps full relative accuracy when the
branch points a and 1 nearly collide (small kappa).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Chebyshev

from .errors import AccuracyFailure, InternalConsistencyError, InvalidArgument
from .numerics import Bracket, find_root, integrate_singular

QUAD_TOL = 1e-14
IDENTITY_TOL = 1e-8


class OutOfBandWarning(UserWarning):
    pass


def _check_a(a: float) -> None:
    if not (0.0 < a < 1.0):
        raise InvalidArgument(f"branch point must lie in (0, 1), got {a!r}")


def _check_kappa(kappa: float) -> None:
    if not (0.0 < kappa < 1.0):
        raise InvalidArgument(f"kappa must lie in (0, 1), got {kappa!r}")


def _quad(g, hi: float, tol: float = QUAD_TOL) -> float:
    return integrate_singular(g, 0.0, hi, tol=tol, atol=0.0)


# -- raw integrals, parametrised by (a, b = 1 - a) -------------------------

SMALL_A = 0.25
SMALL_A_TOL = 1e-12


def _split_point(a: float) -> float:
    # below 1/2: mu = a cosh(y) absorbs sqrt(mu^2 - a^2); above: 1 - mu = w r^2 absorbs sqrt(1 - mu)
    return 0.5


def _kappa_int(a: float, b: float) -> float:
    if a < SMALL_A:
        m = _split_point(a)

        def low(y):
            # mu = a cosh(y): sqrt(mu^2-a^2) dmu = a^2 sinh(y)^2 dy
            mu = a * np.cosh(y)
            return a * a * np.sinh(y) ** 2 / np.sqrt(1.0 - mu * mu)

        w = 1.0 - m

        def high(r):
            # mu = 1 - w r^2, so sqrt(1 - mu) = sqrt(w) r exactly
            mu = 1.0 - w * r * r
            return 2.0 * math.sqrt(w) * np.sqrt((mu * mu - a * a) / (1.0 + mu))

        # the cosh map grows like 1/a, costing about two digits of rounding
        return _quad(low, math.acosh(m / a), SMALL_A_TOL) + _quad(high, 1.0)

    # mu = a + b sin^2(th)
    def g(th):
        s2 = np.sin(th) ** 2
        mu = a + b * s2
        return 2.0 * b * s2 * np.sqrt((mu + a) / (1.0 + mu))

    return _quad(g, 0.5 * math.pi)


def _p_int(a: float, b: float) -> float:
    """int_a^1 dl / sqrt((1-l^2)(l^2-a^2))."""
    if a < SMALL_A:
        m = _split_point(a)

        def low(y):
            lam = a * np.cosh(y)
            return 1.0 / np.sqrt(1.0 - lam * lam)

        w = 1.0 - m

        def high(r):
            lam = 1.0 - w * r * r
            return 2.0 * math.sqrt(w) / np.sqrt((1.0 + lam) * (lam * lam - a * a))

        # the cosh map grows like 1/a, costing about two digits of rounding
        return _quad(low, math.acosh(m / a), SMALL_A_TOL) + _quad(high, 1.0)

    def g(th):
        lam = a + b * np.sin(th) ** 2
        return 2.0 / np.sqrt((lam + a) * (1.0 + lam))

    return _quad(g, 0.5 * math.pi)


def _gap_sqrt_int(a: float, b: float, w_hi: float) -> float:
    """int over mu in (a - w_hi, a) of sqrt((a^2-mu^2)/(1-mu^2))."""
    if w_hi <= 0.0:
        return 0.0
    y_hi = math.asinh(math.sqrt(w_hi / b))

    def g(y):
        sh = np.sinh(y)
        w = b * sh * sh
        return 2.0 * b * sh * sh * np.sqrt((2.0 * a - w) / (1.0 + a - w))

    return _quad(g, y_hi)


def _gap_period_half(a: float, b: float) -> float:
    """int_0^a dmu / sqrt((a^2-mu^2)(1-mu^2))."""
    y_hi = math.asinh(math.sqrt(a / b))

    def g(y):
        sh = np.sinh(y)
        w = b * sh * sh
        return 2.0 / np.sqrt((2.0 * a - w) * (1.0 + a - w))

    return _quad(g, y_hi)


def _ell_int(a: float) -> float:
    a2 = a * a

    def near(r):
        mu = 1.0 + 9.0 * r * r
        return 6.0 * np.sqrt((mu * mu - a2) / (mu + 1.0)) - 18.0 * r

    def tail(w):
        # mu = 1/w on (10, inf); (sqrt(X) - 1)/w^2 rewritten without cancellation
        x = (1.0 - a2 * w * w) / (1.0 - w * w)
        return (1.0 - a2) / ((1.0 - w * w) * (np.sqrt(x) + 1.0))

    return integrate_singular(near, 0.0, 1.0, tol=QUAD_TOL) + integrate_singular(tail, 0.0, 0.1, tol=QUAD_TOL) - 1.0


# -- public scalar maps --------------------------------------------------------

def kappa_integral(a: float) -> float:
    """int_a^1 sqrt((mu^2 - a^2)/(1 - mu^2)) dmu, decreasing from 1 to 0 on (0, 1)."""
    _check_a(a)
    return _kappa_int(a, 1.0 - a)


def _solve_b(kappa: float, tol: float) -> float:
    def f(b):
        if b <= 0.0:
            return -kappa
        if b >= 1.0:
            return 1.0 - kappa
        return _kappa_int(1.0 - b, b) - kappa

    return find_root(f, Bracket(0.0, 1.0, -kappa, 1.0 - kappa), tol=tol, rtol=4e-16)


def solve_a(kappa: float, tol: float = 0.0) -> float:
    """Branch point a(kappa), the root of kappa_integral(a) = kappa."""
    _check_kappa(kappa)
    return 1.0 - _solve_b(kappa, tol)


def period_data(a: float) -> tuple[float, float]:
    """(gamma_c, t) from the A- and B-periods of the holomorphic differential."""
    _check_a(a)
    b = 1.0 - a
    p = _p_int(a, b)
    q = 2.0 * _gap_period_half(a, b)
    return 1.0 / (2.0 * p), q / p


def frequency_V(a: float) -> float:
    """V = -(1/pi) int_{-a}^{a} sqrt((a^2-mu^2)/(1-mu^2)) dmu."""
    _check_a(a)
    return -2.0 / math.pi * _gap_sqrt_int(a, 1.0 - a, a)


def ell_constant(a: float) -> float:
    """The constant term of g(z) = z + ell + O(1/z) at infinity."""
    _check_a(a)
    return _ell_int(a)


@dataclass(frozen=True)
class EllipticData:
    kappa: float
    a: float
    gamma_c: float
    t: float
    V: float
    ell: float
    one_minus_a: float

    @property
    def d_quarter(self) -> float:
        return 0.25 * self.t

    @property
    def c(self) -> complex:
        return 1j * self.gamma_c

    @property
    def tau(self) -> complex:
        return 1j * self.t

    @property
    def d(self) -> complex:
        return -0.25j * self.t

    def bilinear_residual(self) -> float:
        """|pi V - t kappa + 2 pi gamma_c|, the real form of pi V + i tau kappa = 2 pi i c."""
        return abs(math.pi * self.V - self.t * self.kappa + 2.0 * math.pi * self.gamma_c)


def _elliptic_from_b(kappa: float, b: float, ell: bool) -> EllipticData:
    a = 1.0 - b
    p = _p_int(a, b)
    q = 2.0 * _gap_period_half(a, b)
    V = -2.0 / math.pi * _gap_sqrt_int(a, b, a)
    return EllipticData(
        kappa=kappa,
        a=a,
        gamma_c=1.0 / (2.0 * p),
        t=q / p,
        V=V,
        ell=_ell_int(a) if ell else float("nan"),
        one_minus_a=b,
    )


@lru_cache(maxsize=4096)
def elliptic_data(kappa: float, check: bool = True, ell: bool = True) -> EllipticData:
    """Solve for a(kappa) and assemble the bundle, verifying the identities."""
    _check_kappa(kappa)
    b = _solve_b(kappa, 0.0)
    ed = _elliptic_from_b(kappa, b, ell)
    if check:
        r = ed.bilinear_residual()
        if not r < IDENTITY_TOL:
            raise InternalConsistencyError("pi V - t kappa + 2 pi gamma_c = 0", r)
        r = abs(_kappa_int(ed.a, b) - kappa)
        if not r < IDENTITY_TOL:
            raise InternalConsistencyError("kappa_integral(a) = kappa", r)
        if not (ed.V < 0.0):
            raise InternalConsistencyError("V < 0", ed.V)
    return ed


def pi_function(z: float, ed: EllipticData) -> float:
    """Pi(z) = i(g_+ - g_-)(z): negative on the bands, -2 kappa on the gap, 0 off [-1, 1]."""
    a = ed.a
    if not (-1.0 < z < 1.0):
        warnings.warn(f"Pi evaluated off (-1, 1) at z={z}", OutOfBandWarning, stacklevel=2)
        return 0.0
    if -a <= z <= a:
        return -2.0 * ed.kappa
    zz = abs(z)
    a2 = a * a
    if zz - a <= 1.0 - zz:
        # kappa minus the part over (a, zz), mu = a + h r^2
        h = zz - a

        def lower(r):
            mu = a + h * r * r
            return 2.0 * h**1.5 * r * r * np.sqrt((mu + a) / (1.0 - mu * mu))

        return -2.0 * (ed.kappa - integrate_singular(lower, 0.0, 1.0, tol=QUAD_TOL))
    # mu = 1 - w r^2 over (zz, 1)
    w = 1.0 - zz

    def upper(r):
        mu = 1.0 - w * r * r
        return 2.0 * math.sqrt(w) * np.sqrt((mu * mu - a2) / (1.0 + mu))

    return -2.0 * integrate_singular(upper, 0.0, 1.0, tol=QUAD_TOL)


def omega_function(z: float, ed: EllipticData) -> float:
    """Omega(z) = g_+ + g_-: 0 on (a, 1), 2 pi V on (-1, -a), interpolating across the gap."""
    a = ed.a
    if z >= a:
        return 0.0
    if z <= -a:
        return 2.0 * math.pi * ed.V
    if z < 0.0:
        # the integrand is even, and its integral over (-a, a) is -pi V
        return 2.0 * math.pi * ed.V + 2.0 * _gap_sqrt_int(a, ed.one_minus_a, a + z)
    return -2.0 * _gap_sqrt_int(a, ed.one_minus_a, a - z)


def u_infinity_check(ed: EllipticData) -> float:
    """|gamma_c int_1^inf dl/sqrt((l^2-1)(l^2-a^2)) - t/4|.

    On (1, 2) the substitution l - 1 = (1-a) sinh(y)^2 gives the smooth
    integrand 2/sqrt((l+1)(l+a)); on (2, inf) we use w = 1/l.
    """
    a, b = ed.a, ed.one_minus_a

    def near(y):
        sh = np.sinh(y)
        lam = 1.0 + b * sh * sh
        return 2.0 / np.sqrt((lam + 1.0) * (lam + a))

    def far(w):
        return 1.0 / np.sqrt((1.0 - w * w) * (1.0 - a * a * w * w))

    val = _quad(near, math.asinh(math.sqrt(1.0 / b))) + _quad(far, 0.5)
    return abs(ed.gamma_c * val - ed.d_quarter)


def _t_of_kappa(kappa: float) -> float:
    return elliptic_data(kappa, check=False, ell=False).t


def dtau_dkappa(kappa: float, step: float = 1e-3, return_residual: bool = False):
    """dt/dkappa by a central difference with one Richardson step.

    The module derivative is d tau/d kappa = i * dt/dkappa.
    """
    _check_kappa(kappa)
    h = min(step, 0.02 * kappa, 0.25 * (1.0 - kappa))
    if h < 1e-7:
        raise AccuracyFailure(f"difference step collapsed to {h:.1e} near the kappa boundary")

    def central(hh):
        return (_t_of_kappa(kappa + hh) - _t_of_kappa(kappa - hh)) / (2.0 * hh)

    d1, d2 = central(h), central(0.5 * h)
    val = (4.0 * d2 - d1) / 3.0
    if return_residual:
        return val, abs(val - d2)
    return val


# -- smooth interpolation of the slow variables --------------------------------

_SEGMENTS = (-16.2, -13.0, -10.0, -7.5, -5.5, -4.0, -2.8, -1.9, -1.2, -0.75, -0.45, -0.26, -0.14, -0.07)


class SlowTable:
    """Piecewise Chebyshev interpolants of a, t, V, gamma_c in w = ln(kappa).

    Used when the same elliptic data is needed at many thousand kappa
    values (the correction integral). dt/dkappa comes from differentiating
    the t interpolant.
    """

    def __init__(self, kappa_max: float = 0.95, deg: int = 24):
        edges = [w for w in _SEGMENTS if w < math.log(kappa_max)] + [math.log(kappa_max)]
        self.kappa_min = math.exp(edges[0])
        self.kappa_max = kappa_max
        self.edges = np.array(edges)
        self.pieces = []
        for w0, w1 in zip(edges[:-1], edges[1:]):
            nodes = Chebyshev.basis(deg + 1, domain=[w0, w1]).roots()
            data = [elliptic_data(float(math.exp(w)), check=False, ell=False) for w in nodes]
            fits = {
                name: Chebyshev.fit(nodes, [getattr(d, name) for d in data], deg, domain=[w0, w1])
                for name in ("a", "t", "V", "gamma_c")
            }
            fits["dt"] = fits["t"].deriv()
            self.pieces.append(fits)

    def __call__(self, kappa):
        """Return dict of arrays a, t, V, gamma_c, dtdk at the given kappa values."""
        k = np.atleast_1d(np.asarray(kappa, dtype=float))
        if np.any(k < self.kappa_min * (1 - 1e-12)) or np.any(k > self.kappa_max * (1 + 1e-12)):
            raise InvalidArgument(f"kappa outside table range [{self.kappa_min:.1e}, {self.kappa_max}]")
        w = np.log(k)
        idx = np.clip(np.searchsorted(self.edges, w, side="right") - 1, 0, len(self.pieces) - 1)
        out = {name: np.empty_like(w) for name in ("a", "t", "V", "gamma_c", "dtdk")}
        for i in np.unique(idx):
            sel = idx == i
            fits = self.pieces[i]
            ws = w[sel]
            for name in ("a", "t", "V", "gamma_c"):
                out[name][sel] = fits[name](ws)
            out["dtdk"][sel] = fits["dt"](ws) / k[sel]
        return out


@lru_cache(maxsize=4)
def slow_table(kappa_max: float = 0.95) -> SlowTable:
    return SlowTable(kappa_max)
