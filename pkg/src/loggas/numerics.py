"""Small numerical kernel: quadrature, bracketing root finder, symmetric
eigenvalues and elementary symmetric functions.

Everything here is pure; tolerances are explicit keyword arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import AccuracyFailure, InvalidArgument

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f: Callable[[np.ndarray], np.ndarray], lo: float = -1.0, hi: float = 1.0) -> float:
        half = 0.5 * (hi - lo)
        x = lo + half * (self.nodes + 1.0)
        return float(half * np.dot(self.weights, f(x)))


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


@lru_cache(maxsize=64)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int) -> QuadratureRule:
    """Gauss-Legendre rule with ``n`` nodes on (-1, 1)."""
    if int(n) != n or n < 2:
        raise InvalidArgument(f"need an integer n >= 2, got {n!r}")
    x, w = _leggauss(int(n))
    return QuadratureRule(x, w, int(n))


def _substituted(f, lo: float, hi: float, sing: tuple[bool, bool]):
    """Return (g, 0, upper) with g smooth on (0, upper) and the same integral."""
    width = hi - lo
    s_lo, s_hi = sing
    if s_lo and s_hi:
        # mu = lo + width*sin^2(theta): removes both inverse square roots
        def g(th):
            sn, cs = np.sin(th), np.cos(th)
            return f(lo + width * sn * sn) * (2.0 * width) * sn * cs

        return g, 0.0, 0.5 * np.pi
    if s_lo:
        def g(r):
            return f(lo + width * r * r) * (2.0 * width) * r

        return g, 0.0, 1.0
    if s_hi:
        def g(r):
            return f(hi - width * r * r) * (2.0 * width) * r

        return g, 0.0, 1.0
    return f, lo, hi


def integrate_singular(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    sing: tuple[bool, bool] = (False, False),
    tol: float = 1e-13,
    order: int = 32,
    max_order: int = 4096,
    atol: float | None = None,
) -> float:
    """Integrate ``f`` over (lo, hi) with optional inverse-square-root endpoints.

    ``f`` must accept numpy arrays. Flagged endpoints are removed by a
    trigonometric (both ends) or quadratic (one end) substitution, after
    which Gauss-Legendre is doubled until two estimates differ by at most
    max(atol, tol*|value|); ``atol`` defaults to ``tol``.
    """
    if hi == lo:
        return 0.0
    g, a, b = _substituted(f, lo, hi, sing)
    prev = gauss_legendre(order).integrate(g, a, b)
    n, resid = order, float("nan")
    atol = tol if atol is None else atol
    while n < max_order:
        n *= 2
        cur = gauss_legendre(n).integrate(g, a, b)
        if abs(cur - prev) <= max(atol, tol * abs(cur)):
            return cur
        prev, resid = cur, abs(cur - prev)
    raise AccuracyFailure(
        f"quadrature on ({lo}, {hi}) did not converge by order {max_order}",
        estimate=prev,
        residual=resid,
    )


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-14,
    rtol: float = 4 * EPS,
    maxiter: int = 200,
) -> float:
    """Hybrid bisection/secant (Illinois-safeguarded) root finder.

    Keeps a sign-changing bracket at all times, so the result is always
    inside the initial interval.
    """
    lo, hi, flo, fhi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0:
        raise InvalidArgument(f"[{lo}, {hi}] does not bracket a root (f = {flo}, {fhi})")
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if lo > hi:
        lo, hi, flo, fhi = hi, lo, fhi, flo
    side = 0
    # Illinois halving may underflow the stored value, so keep the sign apart
    lo_negative = flo < 0
    for _ in range(maxiter):
        width = hi - lo
        if width <= tol + rtol * max(abs(lo), abs(hi)):
            break
        # secant step, fall back to bisection when it lands badly
        x = hi - fhi * (hi - lo) / (fhi - flo)
        if not (lo < x < hi) or min(x - lo, hi - x) < 0.05 * width:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if fx == 0:
            return x
        if (fx < 0) == lo_negative:
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
    return lo if abs(flo) < abs(fhi) else hi


def sym_eigenvalues(m, method: str = "lapack", sym_tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, in descending order.

    ``method="jacobi"`` runs the cyclic Jacobi sweep below; ``"lapack"``
    hands the matrix to ``numpy.linalg.eigvalsh``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    asym = float(np.abs(a - a.T).max(initial=0.0))
    if asym > sym_tol * scale:
        raise InvalidArgument(f"matrix is not symmetric (max |m - m^T| = {asym:.2e})")
    a = 0.5 * (a + a.T)
    if method == "lapack":
        w = np.linalg.eigvalsh(a)
    elif method == "jacobi":
        w = jacobi_eigenvalues(a)
    else:
        raise InvalidArgument(f"unknown eigen method {method!r}")
    return np.sort(w)[::-1]


def jacobi_eigenvalues(a: np.ndarray, max_sweeps: int = 50) -> np.ndarray:
    """Cyclic Jacobi eigenvalue iteration (row-cyclic ordering)."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= EPS * np.linalg.norm(a.diagonal()) or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    return a.diagonal().copy()


def elementary_symmetric(values, k_max: int, log: bool = False) -> np.ndarray:
    """e_0 .. e_{k_max} of non-negative ``values``.

    Uses e_k <- e_k + v_j e_{k-1} one value at a time. With ``log=True``
    the same recurrence runs on logarithms (``-inf`` for exact zeros),
    which cannot overflow.
    """
    v = np.asarray(values, dtype=float).ravel()
    if k_max < 0:
        raise InvalidArgument("k_max must be >= 0")
    if np.any(~np.isfinite(v)) or np.any(v < 0):
        raise InvalidArgument("values must be finite and non-negative")
    if not log:
        e = np.zeros(k_max + 1)
        e[0] = 1.0
        for x in v:
            e[1:] = e[1:] + x * e[:-1]
        return e
    le = np.full(k_max + 1, -np.inf)
    le[0] = 0.0
    with np.errstate(divide="ignore"):
        lv = np.log(v)
    for lx in lv:
        le[1:] = np.logaddexp(le[1:], lx + le[:-1])
    return le
