"""Jacobi theta functions for a purely imaginary module tau = i t.

Conventions follow the usual Fourier series

    theta_3(z) = 1 + 2 sum q^{k^2} cos(2 pi k z),      q = exp(-pi t)
    theta_0(z) = theta_4(z) = 1 + 2 sum (-1)^k q^{k^2} cos(2 pi k z)
    theta_2(z) = 2 sum q^{(k+1/2)^2} cos((2k+1) pi z)
    theta_1(z) = 2 sum (-1)^k q^{(k+1/2)^2} sin((2k+1) pi z)

All evaluators accept numpy arrays of complex ``z`` and return the value
together with the first two z-derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument

_LOG_CUTOFF = math.log(1e18)


def _terms_needed(t: float, y: float) -> int:
    # smallest k with pi t k^2 - 2 pi k y > ln(1e18): term below 1e-18 of the k=0 scale
    r = y / t
    k = r + math.sqrt(r * r + _LOG_CUTOFF / (math.pi * t))
    return int(math.ceil(k)) + 1


@dataclass(frozen=True)
class ThetaParams:
    """Module tau = i t stored through ``t > 0``; ``q`` is the nome exp(-pi t)."""

    t: float
    k_max: int = 0
    q: float = field(init=False)

    def __post_init__(self):
        if not (self.t > 0 and math.isfinite(self.t)):
            raise InvalidArgument(f"theta module needs t > 0, got {self.t!r}")
        object.__setattr__(self, "q", math.exp(-math.pi * self.t))
        kmin = _terms_needed(self.t, 0.0)
        if self.k_max < kmin:
            object.__setattr__(self, "k_max", kmin)

    @property
    def tau(self) -> complex:
        return 1j * self.t


@dataclass(frozen=True)
class ThetaValue:
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    in_window: bool = True


def _series(k: int, z: np.ndarray, t, nterms: int):
    """Raw series sums (value, d/dz, d^2/dz^2) for theta_k.

    ``t`` is a scalar or an array broadcast against ``z``.
    """
    zz = z[..., None]
    t = np.asarray(t, dtype=float)[..., None]
    if k in (0, 3):
        n = np.arange(1, nterms + 1, dtype=float)
        coef = np.exp(-math.pi * t * n * n)
        if k == 0:
            coef = coef * np.where(n % 2 == 1, -1.0, 1.0)
        om = 2.0 * math.pi * n
        c, s = np.cos(om * zz), np.sin(om * zz)
        val = 1.0 + 2.0 * np.sum(coef * c, axis=-1)
        d1 = -2.0 * np.sum(coef * om * s, axis=-1)
        d2 = -2.0 * np.sum(coef * om * om * c, axis=-1)
        return val, d1, d2
    n = np.arange(0, nterms + 1, dtype=float)
    h = n + 0.5
    coef = np.exp(-math.pi * t * h * h)
    om = (2.0 * n + 1.0) * math.pi
    c, s = np.cos(om * zz), np.sin(om * zz)
    if k == 2:
        val = 2.0 * np.sum(coef * c, axis=-1)
        d1 = -2.0 * np.sum(coef * om * s, axis=-1)
        d2 = -2.0 * np.sum(coef * om * om * c, axis=-1)
        return val, d1, d2
    coef = coef * np.where(n % 2 == 1, -1.0, 1.0)
    val = 2.0 * np.sum(coef * s, axis=-1)
    d1 = 2.0 * np.sum(coef * om * c, axis=-1)
    d2 = -2.0 * np.sum(coef * om * om * s, axis=-1)
    return val, d1, d2


def _prepare(k: int, z, p: ThetaParams):
    if k not in (0, 1, 2, 3):
        raise InvalidArgument(f"theta index must be 0..3, got {k!r}")
    if not isinstance(p, ThetaParams):
        p = ThetaParams(float(p))
    za = np.asarray(z, dtype=complex)
    ymax = float(np.abs(za.imag).max(initial=0.0))
    nterms = max(p.k_max, _terms_needed(p.t, ymax))
    return za, p, ymax, nterms


def theta_k(k: int, z, p: ThetaParams | float) -> ThetaValue:
    """theta_k(z | i t) and its first two z-derivatives.

    ``p`` may be a :class:`ThetaParams` or a bare ``t``. Arguments with
    ``|Im z| > t`` are evaluated but flagged via ``in_window=False``.
    """
    za, p, ymax, nterms = _prepare(k, z, p)
    val, d1, d2 = _series(k, za, p.t, nterms)
    return ThetaValue(val, d1, d2, in_window=ymax <= p.t)


def theta_batch(k: int, z, t):
    """theta_k with a separate module t for every z (arrays broadcast together).

    Returns (value, d1, d2). Used where the module itself varies along a
    curve, e.g. when integrating over kappa.
    """
    if k not in (0, 1, 2, 3):
        raise InvalidArgument(f"theta index must be 0..3, got {k!r}")
    za, ta = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(t, dtype=float))
    if ta.size and not np.all(ta > 0):
        raise InvalidArgument("theta module needs t > 0")
    if za.size == 0:
        e = np.zeros(za.shape, dtype=complex)
        return e, e, e
    # the tail bound depends on |Im z|/t and on t; take the worst of each
    tmin = float(ta.min())
    ratio = float(np.max(np.abs(za.imag) / ta))
    nterms = _terms_needed(tmin, ratio * tmin)
    return _series(k, za, ta, nterms)


def theta_tau_derivative(k: int, z, p: ThetaParams | float) -> np.ndarray:
    """d theta_k / d tau via the heat equation theta'' = 4 pi i d theta/d tau."""
    return theta_k(k, z, p).d2 / (4j * math.pi)


def theta_tau_series(k: int, z, p: ThetaParams | float) -> np.ndarray:
    """d theta_k / d tau by differentiating each q-power in tau directly.

    Kept separate from :func:`theta_tau_derivative` as an independent check.
    """
    za, p, _, nterms = _prepare(k, z, p)
    zz = za[..., None]
    if k in (0, 3):
        n = np.arange(1, nterms + 1, dtype=float)
        expo = n * n
        coef = 1j * math.pi * expo * np.exp(-math.pi * p.t * expo)
        if k == 0:
            coef = coef * np.where(n % 2 == 1, -1.0, 1.0)
        return 2.0 * np.sum(coef * np.cos(2.0 * math.pi * n * zz), axis=-1)
    n = np.arange(0, nterms + 1, dtype=float)
    expo = (n + 0.5) ** 2
    coef = 1j * math.pi * expo * np.exp(-math.pi * p.t * expo)
    om = (2.0 * n + 1.0) * math.pi
    if k == 2:
        return 2.0 * np.sum(coef * np.cos(om * zz), axis=-1)
    coef = coef * np.where(n % 2 == 1, -1.0, 1.0)
    return 2.0 * np.sum(coef * np.sin(om * zz), axis=-1)


def _th(k, z, p):
    return theta_k(k, z, p).value


def _resid(lhs, *terms, scale: float = 1.0) -> float:
    rhs = sum(terms)
    scale = max([scale, float(np.max(np.abs(lhs)))] + [float(np.max(np.abs(x))) for x in terms])
    return float(np.max(np.abs(lhs - rhs))) / scale


def verify_theta_identities(z, w, p: ThetaParams | float) -> dict[str, float]:
    """Residuals of the standard theta identities at (z, w).

    Each entry is max |lhs - rhs| divided by max(1, size of the largest
    term), so identities involving exponentially large quasi-periodicity
    factors are judged on the same footing as the rest.
    """
    if not isinstance(p, ThetaParams):
        p = ThetaParams(float(p))
    tau = p.tau
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    t0 = {k: _th(k, 0.0, p) for k in range(4)}
    tz = {k: _th(k, z, p) for k in range(4)}
    tw = {k: _th(k, w, p) for k in range(4)}
    tp = {k: _th(k, w + z, p) for k in range(4)}
    tm = {k: _th(k, w - z, p) for k in range(4)}
    n0 = t0[0] ** 2
    out: dict[str, float] = {}

    out["addition_0"] = _resid(n0 * tp[0] * tm[0], tw[0] ** 2 * tz[0] ** 2, -(tw[1] ** 2) * tz[1] ** 2)
    out["addition_1"] = _resid(n0 * tp[1] * tm[1], tw[1] ** 2 * tz[0] ** 2, -(tw[0] ** 2) * tz[1] ** 2)
    out["addition_2"] = _resid(n0 * tp[2] * tm[2], tw[0] ** 2 * tz[2] ** 2, -(tw[1] ** 2) * tz[3] ** 2)
    out["addition_3"] = _resid(n0 * tp[3] * tm[3], tw[0] ** 2 * tz[3] ** 2, -(tw[1] ** 2) * tz[2] ** 2)

    lhs = _th(0, 2.0 * z, p) * t0[0] ** 3
    out["duplication_32"] = _resid(lhs, tz[3] ** 4, -(tz[2] ** 4))
    out["duplication_01"] = _resid(lhs, tz[0] ** 4, -(tz[1] ** 4))

    shift = np.exp(-1j * np.pi * tau - 2j * np.pi * z)
    sign = {0: -1.0, 1: 1.0, 2: -1.0, 3: 1.0}
    # the series at z + 1 + tau sums terms as large as |shift| * theta_3(i |Im z|)
    qscale = float(np.max(np.abs(shift) * np.abs(_th(3, 1j * np.abs(z.imag), p))))
    for k in range(4):
        out[f"quasi_period_{k}"] = _resid(_th(k, z + 1.0 + tau, p), sign[k] * shift * tz[k], scale=qscale)
    out["period_3"] = _resid(_th(3, z + 1.0, p), tz[3])

    out["connection_12"] = _resid(_th(1, z - 0.5, p), -tz[2])
    out["connection_03"] = _resid(_th(0, z + 0.5, p), tz[3])
    out["connection_01"] = _resid(
        _th(0, z + 0.5 * tau, p), 1j * np.exp(-1j * np.pi * tau / 4.0 - 1j * np.pi * z) * tz[1]
    )

    for k in range(4):
        tv = theta_k(k, z, p)
        out[f"heat_{k}"] = _resid(tv.d2, 4j * np.pi * theta_tau_series(k, z, p))
        par = -1.0 if k == 1 else 1.0
        out[f"parity_{k}"] = _resid(_th(k, -z, p), par * tz[k])
        out[f"conjugate_{k}"] = _resid(_th(k, np.conj(z), p), np.conj(tz[k]))

    out["zero_1"] = abs(complex(t0[1]))
    out["zero_0"] = abs(complex(_th(0, 0.5 * tau, p)))
    out["zero_2"] = abs(complex(_th(2, 0.5, p)))
    out["zero_3"] = abs(complex(_th(3, 0.5 * (1.0 + tau), p)))
    return out
