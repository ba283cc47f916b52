"""Brute-force validators.

These are deliberately independent of the analytic machinery: the spectral zeta
function is summed over the lattice directly, regularized products are
multiplied out over finite boxes and extrapolated, and derivatives are taken by
finite differences.  They are slow and only meant for cross-checks.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence, Tuple

import numpy as np

from .double_zeta import DoubleZetaParams
from .quadrature import QuadratureConfig, integrate
from .result import EPS, DomainError, EvalResult
from .spheres import DeformedSphere

_TAIL_CONFIG = QuadratureConfig(target_abs_err=1e-16, rel_err=1e-13, max_panels=400)


# ---------------------------------------------------------------------------------
# lattice sums for zeta(s) at large s
# ---------------------------------------------------------------------------------

def _weight(nu, N):
    """C(nu + N - 1, N - 1) for real nu."""
    out = np.ones_like(nu, dtype=float)
    for i in range(1, N):
        out = out * (nu + i) / i
    return out


def _weight_deriv(nu, N):
    out = np.zeros_like(nu, dtype=float)
    for j in range(1, N):
        term = np.ones_like(nu, dtype=float) / j
        for i in range(1, N):
            if i != j:
                term = term * (nu + i) / i
        out = out + term
    return out


def _row_sums(c: np.ndarray, s: float, N: int, nu0: int, V: int) -> np.ndarray:
    """sum_{nu >= nu0} C(nu+N-1, N-1) [(c+nu)(c+nu+N)]^(-s) for every c.

    Terms nu0 <= nu < V are added directly; the rest by Euler-Maclaurin,
    int_V^inf f + f(V)/2 - f'(V)/12, with the integral done by quadrature after
    the substitution nu = V + t/(1 - t).
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    nu = np.arange(nu0, V, dtype=float)
    r = c[:, None] + nu[None, :]
    direct = np.sum(_weight(nu, N)[None, :] * (r * (r + N)) ** (-s), axis=1)

    def f(v):
        r = c[:, None] + v[None, :]
        return _weight(v, N)[None, :] * (r * (r + N)) ** (-s)

    def g(t):
        v = V + t / (1.0 - t)
        return f(v) / (1.0 - t) ** 2

    integral = np.atleast_1d(integrate(g, 0.0, 1.0, _TAIL_CONFIG).value)
    v = np.array([float(V)])
    fV = f(v)[:, 0]
    rV = c + V
    lam = rV * (rV + N)
    dfV = (_weight_deriv(v, N)[0] * lam ** (-s)
           - s * _weight(v, N)[0] * lam ** (-s - 1) * (2 * rV + N))
    return direct + integral + fV / 2.0 - dfV / 12.0


def _lattice_zeta(a: float, N: int, s: float, M: int, V: int) -> float:
    """m = 0 row, rows 1 <= m < M directly, and rows m >= M by Euler-Maclaurin in m."""
    row0 = _row_sums(np.array([0.0]), s, N, 1, V)[0]
    ms = np.arange(1, M, dtype=float)
    rows = 2.0 * np.sum(_row_sums(a * ms, s, N, 0, V))

    def F(m):
        return 2.0 * _row_sums(a * np.asarray(m, dtype=float), s, N, 0, V)

    def g(t):
        m = M + t / (1.0 - t)
        return F(m) / (1.0 - t) ** 2

    integral = integrate(g, 0.0, 1.0, _TAIL_CONFIG).value
    h = 1e-3 * M
    FM = F(np.array([float(M)]))[0]
    dFM = (F(np.array([M + h]))[0] - F(np.array([M - h]))[0]) / (2 * h)
    return row0 + rows + integral + FM / 2.0 - dFM / 12.0


def brute_zeta(sphere: DeformedSphere, s: float, M: int = 40, V: int = 60) -> EvalResult:
    """sum over the spectrum of lambda^(-s), for s > dim/2 (absolute convergence).

    The error bar is the change when both truncation levels are doubled.
    """
    N = sphere.N
    if not s > sphere.dim / 2.0:
        raise DomainError(f"the spectral series converges only for s > {sphere.dim / 2:g}")
    a = float(sphere.a)
    v1 = _lattice_zeta(a, N, s, M, V)
    v2 = _lattice_zeta(a, N, s, 2 * M, 2 * V)
    return EvalResult(float(v2), float(abs(v2 - v1) + 64 * EPS * abs(v2)))


# ---------------------------------------------------------------------------------
# regularized products
# ---------------------------------------------------------------------------------

def _richardson(values: Sequence[float], sizes: Sequence[float], first_power: int = 1) -> Tuple[float, float]:
    """Extrapolate S(R) = S + c_1 R^-p + c_2 R^-(p+1) + ... to R = infinity.

    ``sizes`` must be a geometric sequence of ratio 2.  Returns the estimate and the
    difference between the last two extrapolation levels.
    """
    table = [list(values)]
    p = first_power
    while len(table[-1]) > 1:
        prev = table[-1]
        fac = 2.0**p
        table.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0) for i in range(len(prev) - 1)])
        p += 1
    best = table[-1][0]
    err = abs(best - table[-2][-1]) if len(table) > 1 else abs(best)
    return best, err


def _box_log_product(params: DoubleZetaParams, M: int, chunk: int = 256) -> float:
    """sum over 1 <= m, n <= M of n^alpha [log(1 + p/lam) - sum_{j<=q} (-1)^(j+1) (p/lam)^j / j], lam = (a m + n + x)^2."""
    q = (params.alpha + 2) // 2
    n = np.arange(1, M + 1, dtype=float)
    w = n**params.alpha
    acc = 0.0
    for start in range(1, M + 1, chunk):
        m = np.arange(start, min(M, start + chunk - 1) + 1, dtype=float)
        lam = (params.a * m[:, None] + n[None, :] + params.x) ** 2
        u = params.p / lam
        val = np.log1p(u)
        for j in range(1, q + 1):
            val -= (-1) ** (j + 1) * u**j / j
        acc += math.fsum(np.sum(val * w[None, :], axis=0))
    return acc


def brute_log_product(params: DoubleZetaParams, M0: int = 100, levels: int = 5) -> EvalResult:
    """log of prod_{m,n>=1} [(1 + p/lam) exp(sum_{j<=q} (-1)^j p^j / (j lam^j))]^(n^alpha).

    Partial products over the boxes m, n <= M0 2^i are extrapolated in 1/M.
    """
    if abs(params.p) >= (params.a + 1 + params.x) ** 2:
        raise DomainError("need |p| < (a + 1 + x)^2")
    if params.p == 0:
        return EvalResult(0.0, 0.0)
    sizes = [M0 * 2**i for i in range(levels)]
    vals = [_box_log_product(params, M) for M in sizes]
    best, err = _richardson(vals, sizes, first_power=1)
    return EvalResult(best, err + 1e3 * EPS * abs(best))


def brute_single_log_product(N0: int = 1000, levels: int = 6) -> EvalResult:
    """log prod_{n>=2} (1 - 1/n^2)^n e^(1/n), by partial sums to N0 2^i and Richardson in 1/N."""
    sizes = [N0 * 2**i for i in range(levels)]
    n = np.arange(2, sizes[-1] + 1, dtype=float)
    terms = n * np.log1p(-1.0 / n**2) + 1.0 / n
    partial = np.cumsum(terms)
    vals = [float(partial[N - 2]) for N in sizes]
    best, err = _richardson(vals, sizes, first_power=2)
    return EvalResult(best, err + 1e3 * EPS * abs(best))


# ---------------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------------

def finite_difference_check(fn: Callable[[float], float], point: float, h: float) -> Tuple[float, float]:
    """Five-point central derivative of ``fn`` at ``point`` and an error estimate.

    The five-point rule is the Richardson combination (4 D(h) - D(2h)) / 3 of the
    central differences D(h), D(2h); the error estimate is |D(h) - D(2h)| / 3, the
    error of D(h), which bounds that of the combined rule for smooth ``fn``.
    """
    fp1, fm1 = fn(point + h), fn(point - h)
    fp2, fm2 = fn(point + 2 * h), fn(point - 2 * h)
    d1 = (fp1 - fm1) / (2 * h)
    d2 = (fp2 - fm2) / (4 * h)
    return (4 * d1 - d2) / 3.0, abs(d1 - d2) / 3.0
