"""Invariant suites run by ``loggas verify``.

Each check yields a :class:`Check` with the measured residual and the
threshold it is held to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import elliptic, spectral, theta
from .asymptotics import (
    big_theta0,
    big_theta1,
    bound_sandwich,
    m_density,
    m_integral,
    theorem1_logdet,
    xi_k,
)
from .results import ScalePoint


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.threshold)


def theta_suite(quick: bool = False, seed: int = 0) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = {}
    for _ in range(20 if quick else 100):
        t = rng.uniform(0.3, 3.0)
        z = complex(rng.uniform(-1, 1), rng.uniform(-0.25, 0.25) * t)
        w = complex(rng.uniform(-1, 1), rng.uniform(-0.25, 0.25) * t)
        for key, r in theta.verify_theta_identities(z, w, t).items():
            family = key.rsplit("_", 1)[0]
            worst[family] = max(worst.get(family, 0.0), r)
    for family, r in sorted(worst.items()):
        yield Check("theta", family, r, 1e-12)


def elliptic_suite(quick: bool = False) -> Iterator[Check]:
    grid = [0.1, 0.5, 0.9] if quick else [0.1 * k for k in range(1, 10)]
    bil = max(elliptic.elliptic_data(k).bilinear_residual() for k in grid)
    yield Check("elliptic", "bilinear pi V - t kappa + 2 pi gamma_c", bil, 1e-10)
    uinf = max(elliptic.u_infinity_check(elliptic.elliptic_data(k)) for k in grid)
    yield Check("elliptic", "u_infinity = t/4", uinf, 1e-9)
    k = 0.01
    ed = elliptic.elliptic_data(k)
    # next-order terms are O(kappa^3), O(kappa^2 ln kappa) and O(kappa ln kappa)
    yield Check("elliptic", "a small-kappa expansion", abs(ed.a - (1 - 2 * k / math.pi - k * k / math.pi**2)), 5 * k**3)
    v_exp = -2 / math.pi * (1 + k / math.pi * math.log(k) - k / math.pi * (1 + math.log(4 * math.pi)))
    yield Check("elliptic", "V small-kappa expansion", abs(ed.V - v_exp), 5 * k * k * abs(math.log(k)))
    t_exp = 2 / math.pi * math.log(4 * math.pi / k)
    yield Check("elliptic", "t small-kappa expansion", abs(ed.t - t_exp), 5 * k * abs(math.log(k)))
    ts = [elliptic.elliptic_data(k).t for k in grid]
    yield Check("elliptic", "t decreasing in kappa", float(max(np.diff(ts).max(), 0.0)), 0.0)


def spectral_suite(quick: bool = False) -> Iterator[Check]:
    svals = [2.0, 5.0, 10.0] if quick else [2.0, 5.0, 10.0, 20.0]
    tr = 0.0
    for s in svals:
        sd = spectral.build_spectrum(s)
        tr = max(tr, abs(sd.trace - 2 * s / math.pi) / (2 * s / math.pi))
    yield Check("spectral", "trace = 2s/pi", tr, 1e-8)
    sd = spectral.build_spectrum(5.0)
    p = spectral.gap_probabilities(sd, 40)
    yield Check("spectral", "sum p_n = 1", abs(p.sum() - 1.0), 1e-8)
    yield Check("spectral", "sum n p_n = 2s/pi", abs(np.dot(np.arange(41), p) / (10 / math.pi) - 1.0), 1e-6)
    res = 0.0
    for v in (1.0, 2.0, 3.0):
        direct = math.exp(spectral.oracle_logdet(sd, v=v).log_det)
        res = max(res, abs(np.dot(np.exp(-2 * v * np.arange(41)), p) - direct))
    yield Check("spectral", "p_n resummation", res, 1e-8)
    a, b = spectral.build_spectrum(10.0, 120), spectral.build_spectrum(10.0, 240)
    yield Check("spectral", "top eigenvalues stable under refinement", float(np.abs(a.eigenvalues[:10] - b.eigenvalues[:10]).max()), 1e-10)
    mono = 0.0
    vals = [spectral.oracle_logdet(spectral.build_spectrum(s), v=1.0).log_det for s in (2.0, 4.0, 6.0, 8.0)]
    mono = max(mono, max(np.diff(vals).max(), 0.0))
    vals = [spectral.oracle_logdet(sd, gamma=g).log_det for g in (0.1, 0.4, 0.7, 1.0)]
    mono = max(mono, max(np.diff(vals).max(), 0.0))
    yield Check("spectral", "log det decreasing in s and gamma", float(mono), 0.0)


def asymptotics_suite(quick: bool = False, seed: int = 1) -> Iterator[Check]:
    rng = np.random.default_rng(seed)
    sym = per = 0.0
    for kappa in (0.2, 0.5, 0.8):
        ed = elliptic.elliptic_data(kappa)
        x = rng.uniform(-1, 1, 16)
        sym = max(
            sym,
            float(np.abs(xi_k(1, x, ed) + xi_k(0, x, ed)).max()),
            float(np.abs(xi_k(2, x, ed) - xi_k(3, x, ed)).max()),
            float(np.abs(big_theta1(x, ed) - big_theta0(x, ed)).max()),
        )
        per = max(per, float(np.abs(m_density(x + 1.0, kappa) - m_density(x, kappa)).max()))
    yield Check("asymptotics", "Xi/Theta symmetry identities", sym, 1e-10)
    yield Check("asymptotics", "M 1-periodic", per, 1e-10)
    kappas = [0.5] if quick else [0.3, 0.4, 0.5]
    svals = [20.0] if quick else [15.0, 20.0, 25.0]
    worst_m = worst_ratio = 0.0
    for kappa in kappas:
        for s in svals:
            p = ScalePoint.from_kappa(s, kappa)
            worst_m = max(worst_m, abs(m_integral(s, p.v)))
            r = theorem1_logdet(p)
            o = spectral.oracle_logdet(spectral.build_spectrum(s), v=p.v).log_det
            worst_ratio = max(worst_ratio, abs(r.log_det - o) / r.error_bound)
    yield Check("asymptotics", "|m_integral| < 5", worst_m, 5.0)
    yield Check("asymptotics", "theorem1 within envelope (ratio)", worst_ratio, 1.0)
    viol = 0.0
    for _ in range(5 if quick else 20):
        s = rng.uniform(1.0, 20.0)
        v = rng.uniform(0.0, min(12.0, s))
        p = ScalePoint(s, v)
        lo, hi = bound_sandwich(p)
        o = spectral.oracle_logdet(spectral.build_spectrum(s), v=v).log_det
        viol = max(viol, lo - o, o - hi, 0.0)
    yield Check("asymptotics", "bound sandwich", viol, 1e-12)


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "theta": theta_suite,
    "elliptic": elliptic_suite,
    "spectral": spectral_suite,
    "asymptotics": asymptotics_suite,
}


def run(suite: str = "all", quick: bool = False) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    out: list[Check] = []
    for name in names:
        out.extend(SUITES[name](quick=quick))
    return out
