"""Nystrom oracle for det(I - gamma K_s), K_s the sine kernel on (-1, 1).

The operator is discretised on Gauss-Legendre nodes and symmetrised,
A_ij = sqrt(w_i) K_s(x_i, x_j) sqrt(w_j), so its eigenvalues approximate
the operator eigenvalues 1 > lambda_0 > lambda_1 > ... > 0 with spectral
accuracy. Everything downstream (log-determinants, gap probabilities) is a
function of that spectrum.

Eigenvalues that are within rounding of 1 carry no information in
1 - lambda. For those we use d ln(lambda_n)/ds = 2 phi_n(1; s)^2 / s
(first-order perturbation with d K_s/ds = cos(s(x-y))/pi), so

    1 - lambda_n(s) = -expm1(-int_s^inf 2 phi_n(1; r)^2 dr / r),

where phi_n(1; r) comes from the commuting prolate differential operator,
tridiagonal in the Legendre basis with well separated eigenvalues.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DiscretizationError, InvalidArgument, PrecisionDomainError, ResourceError
from scipy.linalg import eigh_tridiagonal

from .numerics import EPS, elementary_symmetric, gauss_legendre, sym_eigenvalues
from .results import LogDetResult, Regime

CLIP_TOL = 1e-12
GUARD_FACTOR = 1e3
MAX_NODES = 4000
# eigenvalues with 1 - lambda below this are recomputed through the prolate route
REFINE_BELOW = 1e-3


class UnderResolvedWarning(UserWarning):
    pass


def resolution_rule(s: float) -> int:
    return max(60, int(math.ceil(10.0 * s)))


def max_trusted_v(eig_error: float = EPS) -> float:
    """Largest v whose coupling 1 - gamma = exp(-2v) still clears the precision guard."""
    return -0.5 * math.log(GUARD_FACTOR * eig_error)


@dataclass(frozen=True)
class SpectralData:
    """Spectrum of the discretised operator.

    ``one_minus`` holds 1 - lambda_j, recomputed to full relative accuracy
    for the eigenvalues closest to 1 (``n_refined`` of them).
    """

    s: float
    n_nodes: int
    eigenvalues: np.ndarray
    one_minus: np.ndarray
    trace: float
    eig_error: float
    n_refined: int = 0


def prolate_values_at_one(c: float, m: int) -> np.ndarray:
    """phi_n(1) for n < m, phi_n the L^2(-1,1)-normalised eigenfunctions of the sine kernel.

    They are the eigenfunctions of -(d/dx)(1-x^2)(d/dx) + c^2 x^2, which in
    normalised Legendre polynomials splits into two symmetric tridiagonal
    matrices (even and odd degree).
    """
    nk = int(2.0 * c) + 80 + 2 * m
    out = np.empty(m)
    for par in (0, 1):
        cnt = (m - par + 1) // 2
        if cnt <= 0:
            continue
        k = np.arange(par, nk, 2, dtype=float)
        diag = k * (k + 1.0) + c * c * (2.0 * k * k + 2.0 * k - 1.0) / ((2.0 * k - 1.0) * (2.0 * k + 3.0))
        kk = k[:-1]
        off = c * c * (kk + 1.0) * (kk + 2.0) / ((2.0 * kk + 3.0) * np.sqrt((2.0 * kk + 1.0) * (2.0 * kk + 5.0)))
        _, vec = eigh_tridiagonal(diag, off, select="i", select_range=(0, cnt - 1))
        out[par::2] = np.sqrt(k + 0.5) @ vec
    return out


def prolate_one_minus(s: float, m: int, span: float = 25.0, order: int = 48) -> np.ndarray:
    """1 - lambda_n(s) for n < m to full relative accuracy (integrand decays like e^{-2r})."""
    rule = gauss_legendre(order)
    r = s + 0.5 * span * (rule.nodes + 1.0)
    w = 0.5 * span * rule.weights
    acc = np.zeros(m)
    for ri, wi in zip(r, w):
        acc += wi * 2.0 * prolate_values_at_one(ri, m) ** 2 / ri
    return -np.expm1(-acc)


def sine_kernel_matrix(s: float, n_nodes: int) -> np.ndarray:
    rule = gauss_legendre(n_nodes)
    x, w = rule.nodes, rule.weights
    sw = np.sqrt(w)
    # sin(s u)/(pi u) = (s/pi) sinc(s u / pi); the diagonal is s/pi
    k = (s / math.pi) * np.sinc((s / math.pi) * (x[:, None] - x[None, :]))
    return sw[:, None] * k * sw[None, :]


def build_spectrum(
    s: float, n_nodes: int | str | None = "auto", method: str = "lapack", refine: bool = True
) -> SpectralData:
    """Eigenvalues of the Nystrom-discretised sine kernel, descending."""
    if not (s > 0 and math.isfinite(s)):
        raise InvalidArgument(f"s must be positive and finite, got {s!r}")
    rule_n = resolution_rule(s)
    if n_nodes in (None, "auto"):
        n = rule_n
    else:
        n = int(n_nodes)
        if n < rule_n:
            warnings.warn(f"{n} nodes below the resolution rule {rule_n} for s={s}", UnderResolvedWarning, stacklevel=2)
    if n > MAX_NODES:
        raise ResourceError(f"{n} nodes exceeds the budget of {MAX_NODES}")
    a = sine_kernel_matrix(s, n)
    raw = sym_eigenvalues(a, method=method)
    if raw[0] > 1.0 + CLIP_TOL or raw[-1] < -CLIP_TOL:
        raise DiscretizationError(f"eigenvalues left [0, 1]: range [{raw[-1]:.3e}, {raw[0]:.17g}]")
    lam = np.clip(raw, 0.0, np.nextafter(1.0, 0.0))
    om = 1.0 - lam
    m = int(np.count_nonzero(om < REFINE_BELOW)) if refine else 0
    if m:
        om[:m] = prolate_one_minus(s, m)
        lam[:m] = 1.0 - om[:m]
    lam.setflags(write=False)
    om.setflags(write=False)
    return SpectralData(
        s=float(s),
        n_nodes=n,
        eigenvalues=lam,
        one_minus=om,
        trace=float(raw.sum()),
        eig_error=EPS * max(1.0, float(raw[0])),
        n_refined=m,
    )


def _check_guard(sd: SpectralData, e2v: float) -> None:
    if e2v <= GUARD_FACTOR * sd.eig_error:
        raise PrecisionDomainError(
            f"1 - gamma = {e2v:.3e} is below the eigenvalue accuracy guard; "
            f"trustworthy only for v <= {max_trusted_v(sd.eig_error):.2f}",
            max_v=max_trusted_v(sd.eig_error),
        )


def oracle_logdet(sd: SpectralData, gamma: float | None = None, v: float | None = None) -> LogDetResult:
    """ln det(I - gamma K_s) = sum_j ln(1 - gamma lambda_j).

    Pass either ``gamma`` or ``v`` (gamma = 1 - e^{-2v}); with ``v`` the
    small quantity e^{-2v} is used directly, which avoids forming 1 - gamma.
    ``gamma == 1`` is allowed and gives the gap probability.
    """
    if (gamma is None) == (v is None):
        raise InvalidArgument("pass exactly one of gamma or v")
    lam = sd.eigenvalues
    if v is not None:
        if not (v >= 0):
            raise InvalidArgument(f"v must be >= 0, got {v!r}")
        if v == 0:
            return LogDetResult(0.0, Regime.ORACLE, diagnostics={"n_nodes": sd.n_nodes})
        e2v = math.exp(-2.0 * v)
        if math.isinf(v):
            e2v = 0.0
        gamma = -math.expm1(-2.0 * v)
    else:
        if not (0.0 <= gamma <= 1.0):
            raise InvalidArgument(f"gamma must lie in [0, 1], got {gamma!r}")
        if gamma == 0:
            return LogDetResult(0.0, Regime.ORACLE, diagnostics={"n_nodes": sd.n_nodes})
        e2v = 1.0 - gamma
    if e2v > 0.0:
        _check_guard(sd, e2v)
    # 1 - gamma lambda = (1 - lambda) + (1 - gamma) lambda, both terms non-negative
    val = float(np.sum(np.log(sd.one_minus + e2v * lam)))
    return LogDetResult(val, Regime.ORACLE, diagnostics={"n_nodes": sd.n_nodes, "gamma": gamma})


def gap_probabilities(sd: SpectralData, n_max: int) -> np.ndarray:
    """p_n(s) = P(exactly n points in the interval), n = 0..n_max.

    Each eigenvalue is an independent Bernoulli(lambda_j) occupation, so
    p_n follows from the Poisson-binomial recursion
    p_k <- (1 - lambda_j) p_k + lambda_j p_{k-1}, a convex combination at
    every step (no cancellation, no overflow).
    """
    if n_max < 0:
        raise InvalidArgument("n_max must be >= 0")
    om = sd.one_minus
    if om.min() <= 8.0 * EPS:
        raise PrecisionDomainError(f"1 - lambda_0 = {om.min():.2e} is at machine precision")
    p = np.zeros(n_max + 1)
    p[0] = 1.0
    for lam, o in zip(sd.eigenvalues, om):
        p[1:] = o * p[1:] + lam * p[:-1]
        p[0] *= o
    return p


def gap_probabilities_symmetric(sd: SpectralData, n_max: int) -> np.ndarray:
    """Same as :func:`gap_probabilities` via prod(1 - lambda) e_n(lambda/(1 - lambda)) in log space."""
    om = sd.one_minus
    if om.min() <= 8.0 * EPS:
        raise PrecisionDomainError(f"1 - lambda_0 = {om.min():.2e} is at machine precision")
    le = elementary_symmetric(sd.eigenvalues / om, n_max, log=True)
    return np.exp(le + np.sum(np.log(om)))


def bohigas_pato(gamma: float, s: float, n_nodes: int | str | None = "auto") -> LogDetResult:
    """ln det(I - gamma K_{s/gamma}): thinning by gamma with the density restored."""
    if not (0.0 < gamma <= 1.0):
        raise InvalidArgument(f"gamma must lie in (0, 1], got {gamma!r}")
    if not (s > 0):
        raise InvalidArgument(f"s must be positive, got {s!r}")
    scale = s / gamma
    if resolution_rule(scale) > MAX_NODES:
        raise ResourceError(f"s/gamma = {scale:.3g} needs more than {MAX_NODES} nodes")
    sd = build_spectrum(scale, n_nodes)
    res = oracle_logdet(sd, gamma=gamma)
    return LogDetResult(res.log_det, Regime.ORACLE, diagnostics={"n_nodes": sd.n_nodes, "scale": scale, "gamma": gamma})


def dyson_period_probe(v: float, s_grid: Sequence[float], n_nodes: int | str | None = "auto") -> np.ndarray:
    """Q_v(s) = exp(4vs/pi) det(I - gamma K_s) sampled on ``s_grid``."""
    out = []
    for s in s_grid:
        sd = build_spectrum(float(s), n_nodes)
        out.append(math.exp(4.0 * v * s / math.pi + oracle_logdet(sd, v=v).log_det))
    return np.array(out)
