"""Zeta invariants of the Laplacian on deformed spheres S^{N+1}_k, a = 1/k.

The spectrum is {(a|m| + nu)(a|m| + nu + N)} where nu = n_1 + ... + n_N, with
weight C(nu+N-1, N-1) for m = 0, nu >= 1 and 2 C(nu+N-1, N-1) for m >= 1, nu >= 0.
Completing the square splits the spectral zeta function into

    sum_alpha d_alpha z(s; alpha, 2, N/2, -N^2/4)            (m = 0)
  + 2 sum_alpha c_alpha Z(s; alpha, a, N/2 - 1, -N^2/4)      (m >= 1, n = nu + 1)

and every piece is handled by :mod:`~lunezeta.simple_zeta` and
:mod:`~lunezeta.double_zeta`.  For dimensions 2 and 3 the closed-form theorem
expressions are evaluated as well and checked against the pipeline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .double_zeta import ROUTE_TOL, DoubleZetaParams, Z_continued, Z_invariants, Z_log_fredholm
from .quadrature import DEFAULT_CONFIG, PlanaIntegrand, QuadratureConfig, plana_integral
from .result import EPS, DomainError, EvalResult, RouteDisagreementError, total
from .simple_zeta import SimpleZetaParams, z_invariants, z_laurent, z_value
from .specfun import (
    CONSTANTS,
    LOG_2PI,
    digamma,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    ln_gamma,
)

Number = Union[float, Fraction]

#: Allowance added to error bars when the theorem expressions are compared with the pipeline.
CLOSED_FORM_TOL = 1e-9


@dataclass(frozen=True)
class DeformedSphere:
    """S^{dim}_k with azimuthal frequency multiplier a = 1/k.

    ``k`` may be a :class:`fractions.Fraction`; the spectrum is then enumerated
    with exact rational arithmetic.
    """

    dim: int
    k: Number

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError("dim must be an integer >= 2")
        if not 0 < self.k <= 1:
            raise DomainError("k must lie in (0, 1]")

    @classmethod
    def from_a(cls, dim: int, a: Number) -> "DeformedSphere":
        if not a >= 1:
            raise DomainError("a = 1/k must be >= 1")
        k = Fraction(1) / a if isinstance(a, (Fraction, int)) else 1.0 / a
        return cls(dim, k)

    @property
    def a(self) -> Number:
        return Fraction(1) / self.k if isinstance(self.k, Fraction) else 1.0 / self.k

    @property
    def N(self) -> int:
        return int(self.dim) - 1

    @property
    def lune_angle(self) -> float:
        return math.pi / float(self.a)


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: float
    multiplicity: int


@dataclass(frozen=True)
class ZetaInvariants:
    zeta0: EvalResult
    zeta0_prime: EvalResult
    det: EvalResult
    route: str = "a"
    extras: Dict[str, EvalResult] = field(default_factory=dict, compare=False)

    @classmethod
    def from_parts(cls, zeta0: EvalResult, zeta0_prime: EvalResult, route: str = "a", **extras) -> "ZetaInvariants":
        det = math.exp(-zeta0_prime.value)
        det_err = det * math.expm1(zeta0_prime.abs_err) + 4 * EPS * det
        return cls(zeta0, zeta0_prime, EvalResult(det, det_err), route, dict(extras))


# ---------------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------------

def _weights(nu: np.ndarray, N: int) -> np.ndarray:
    """C(nu + N - 1, N - 1) as exact integers (object-free for the sizes used here)."""
    out = np.ones_like(nu, dtype=np.int64)
    for i in range(1, N):
        out = out * (nu + i) // i
    return out


def _lattice(sphere: DeformedSphere, R: float):
    """All (m >= 0, nu) with a m + nu <= R, excluding the zero mode."""
    a = sphere.a
    af = float(a)
    m_max = int(math.floor(R / af))
    ms = np.arange(0, m_max + 1)
    nu_max = np.floor(R - af * ms + 1e-9).astype(np.int64)
    counts = nu_max + 1
    m = np.repeat(ms, counts)
    starts = np.cumsum(counts) - counts
    nu = np.arange(counts.sum()) - np.repeat(starts, counts)
    keep = ~((m == 0) & (nu == 0))
    return m[keep], nu[keep]


def enumerate_spectrum(sphere: DeformedSphere, count: int) -> List[SpectrumEntry]:
    """First ``count`` distinct eigenvalues with their total multiplicities.

    Equal eigenvalues are merged exactly when ``a`` is rational (given as a
    Fraction or an integer-valued float), otherwise with a 1e-12 relative tolerance.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    N = sphere.N
    a = sphere.a
    af = float(a)
    exact = isinstance(a, Fraction) or af.is_integer()
    if exact:
        fa = Fraction(a).limit_denominator() if not isinstance(a, Fraction) else a
        num, den = fa.numerator, fa.denominator
    R = max(2.0, 2.0 * math.sqrt(count * af) + af)
    while True:
        m, nu = _lattice(sphere, R)
        w = _weights(nu, N) * np.where(m > 0, 2, 1)
        if exact:
            key = m * num + nu * den  # den * r, an exact integer
            order = np.argsort(key, kind="stable")
            key, w = key[order], w[order]
            uniq, start = np.unique(key, return_index=True)
            mult = np.add.reduceat(w, start)
            r = uniq / den
        else:
            r_all = af * m + nu
            order = np.argsort(r_all, kind="stable")
            r_all, w = r_all[order], w[order]
            new = np.ones(r_all.size, dtype=bool)
            new[1:] = np.diff(r_all) > 1e-12 * np.maximum(r_all[1:], 1.0)
            start = np.flatnonzero(new)
            r = r_all[start]
            mult = np.add.reduceat(w, start)
        # every r <= R is complete, so the first `count` are final once they fit below R
        if r.size >= count and r[count - 1] <= R:
            break
        R *= 1.6
    r = r[:count]
    lam = r * (r + N)
    return [SpectrumEntry(float(l), int(mu)) for l, mu in zip(lam, mult[:count])]


def heat_trace_partial(sphere: DeformedSphere, t: float, terms: int) -> EvalResult:
    """sum multiplicity * exp(-lambda t) over the first ``terms`` eigenvalues.

    ``abs_err`` bounds the omitted eigenvalues: beyond the last radius R = a|m| + nu
    used, each unit shell [R + j, R + j + 1) holds at most (R + j + 1)/a + 1 lattice
    points of weight at most 2 (R + j + 1)^(N - 1).
    """
    if not t > 0:
        raise DomainError("t must be positive")
    spec = enumerate_spectrum(sphere, terms)
    lam = np.array([e.eigenvalue for e in spec])
    mult = np.array([e.multiplicity for e in spec], dtype=float)
    value = float(np.sum(mult * np.exp(-lam * t)))
    N = sphere.N
    af = float(sphere.a)
    R = (-N + math.sqrt(N * N + 4 * lam[-1])) / 2.0
    tail = 0.0
    j = 0
    while True:
        rr = R + j
        bound = 2.0 * (rr + 1) ** (N - 1) * ((rr + 1) / af + 1) * math.exp(-rr * (rr + N) * t)
        tail += bound
        j += 1
        if bound < 1e-18 * max(value, 1e-300) or j > 10**6:
            break
    return EvalResult(value, tail + 4 * EPS * value)


# ---------------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------------

def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_shift(p: Sequence[Fraction], h: Fraction) -> List[Fraction]:
    """Coefficients of P(u + h) in powers of u, given P in powers of its argument."""
    out = [Fraction(0)]
    for c in reversed(p):  # Horner in (u + h)
        out = _poly_mul(out, [h, Fraction(1)])
        out[0] += c
    return out


def binomial_poly(N: int, offset: int) -> List[Fraction]:
    """Coefficients (in powers of n) of C(n + offset, N - 1) = prod_{i=1}^{N-1} (n + offset - N + 1 + i) / (N-1)!."""
    out = [Fraction(1)]
    for i in range(1, N):
        out = _poly_mul(out, [Fraction(offset - N + 1 + i, i), Fraction(1, i)])
    return out


def poly_eval(p: Sequence[Fraction], u) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * u + c
    return acc


@dataclass(frozen=True)
class Decomposition:
    """zeta(s) = sum_i coef_i z(s; simple_i) + sum_j coef_j Z(s; double_j)."""

    simple: Tuple[Tuple[Fraction, SimpleZetaParams], ...]
    double: Tuple[Tuple[Fraction, DoubleZetaParams], ...]
    simple_poly: Tuple[Fraction, ...]
    double_poly: Tuple[Fraction, ...]


def decompose_poly(N: int):
    """Weight polynomials of the two parts.

    simple: C(n + N - 1, N - 1) in powers of u = n + N/2;
    double: C(n + N - 2, N - 1) in powers of n (n = nu + 1 >= 1).
    """
    simple = _poly_shift(binomial_poly(N, N - 1), Fraction(-N, 2))
    double = binomial_poly(N, N - 2)
    return simple, double


def decompose(sphere: DeformedSphere) -> Decomposition:
    N = sphere.N
    simple_poly, double_poly = decompose_poly(N)
    x_s, x_d, p = N / 2.0, N / 2.0 - 1.0, -(N * N) / 4.0
    a = float(sphere.a)
    simple = tuple((c, SimpleZetaParams(i, 2, x_s, p)) for i, c in enumerate(simple_poly) if c != 0)
    double = tuple((2 * c, DoubleZetaParams(i, a, x_d, p)) for i, c in enumerate(double_poly) if c != 0)
    return Decomposition(simple, double, tuple(simple_poly), tuple(double_poly))


def _decompose_any_a(dim: int, a: float) -> Decomposition:
    """As :func:`decompose` but for any a > 0 (used for derivatives across a = 1)."""
    N = dim - 1
    simple_poly, double_poly = decompose_poly(N)
    x_s, x_d, p = N / 2.0, N / 2.0 - 1.0, -(N * N) / 4.0
    simple = tuple((c, SimpleZetaParams(i, 2, x_s, p)) for i, c in enumerate(simple_poly) if c != 0)
    double = tuple((2 * c, DoubleZetaParams(i, a, x_d, p)) for i, c in enumerate(double_poly) if c != 0)
    return Decomposition(simple, double, tuple(simple_poly), tuple(double_poly))


# ---------------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------------

def _simple_both(sp: SimpleZetaParams, route_tol: float):
    A, B = z_invariants(sp, "a"), z_invariants(sp, "b")
    for name in ("zeta0", "zeta0_prime"):
        ra, rb = getattr(A, name), getattr(B, name)
        if abs(ra.value - rb.value) > ra.abs_err + rb.abs_err + route_tol:
            raise RouteDisagreementError(f"simple part {name}: routes differ by {abs(ra.value - rb.value):.3g}")
    return A


def _assemble(dec: Decomposition, route: str, cfg: QuadratureConfig, route_tol: float):
    z0, z1 = [], []
    for c, sp in dec.simple:
        inv = _simple_both(sp, route_tol) if route == "both" else z_invariants(sp, route)
        z0.append(inv.zeta0 * float(c))
        z1.append(inv.zeta0_prime * float(c))
    for c, dp in dec.double:
        inv = Z_invariants(dp, route, cfg, route_tol)
        z0.append(inv.zeta0 * float(c))
        z1.append(inv.zeta0_prime * float(c))
    return total(z0), total(z1)


@lru_cache(maxsize=1024)
def _pipeline(dim: int, a: float, route: str, cfg: QuadratureConfig, route_tol: float):
    return _assemble(_decompose_any_a(dim, a), route, cfg, route_tol)


def pipeline_invariants(dim: int, a: float, route: str = "a", cfg: QuadratureConfig = DEFAULT_CONFIG,
                        route_tol: float = ROUTE_TOL):
    """(zeta(0), zeta'(0)) from the decomposition, for any a > 0."""
    route = route.lower()
    if route not in ("a", "b", "both"):
        raise ValueError(f"unknown route {route!r}")
    return _pipeline(int(dim), float(a), route, cfg, float(route_tol))


def zeta_invariants(sphere: DeformedSphere, route: str = "a", cfg: QuadratureConfig = DEFAULT_CONFIG,
                    check_closed_form: bool = True, tol: float = CLOSED_FORM_TOL,
                    route_tol: float = ROUTE_TOL) -> ZetaInvariants:
    """zeta(0), zeta'(0) and det = exp(-zeta'(0)) of the Laplacian on ``sphere``.

    ``route`` selects the shift formula ("a"), the squared-sequence formula ("b"), or
    both with an agreement check within ``route_tol`` ("both", returns route A).
    In dimensions 2 and 3 the theorem expressions are evaluated too and must agree
    with the pipeline within the error bars plus ``tol``.
    """
    route = route.lower()
    a = float(sphere.a)
    z0, z1 = pipeline_invariants(sphere.dim, a, route, cfg, route_tol)
    extras = {}
    if check_closed_form and sphere.dim in (2, 3):
        cf_route = "a" if route == "both" else route
        cz0 = closed_form_zeta0(sphere.dim, a)
        cz1 = closed_form_zeta0_prime(sphere.dim, a, cf_route, cfg)
        extras = {"closed_form_zeta0": cz0, "closed_form_zeta0_prime": cz1}
        for name, r, c in (("zeta(0)", z0, cz0), ("zeta'(0)", z1, cz1)):
            if abs(r.value - c.value) > r.abs_err + c.abs_err + tol:
                raise RouteDisagreementError(
                    f"{name} from the decomposition ({r.value!r}) and the closed form ({c.value!r}) disagree"
                )
    return ZetaInvariants.from_parts(z0, z1, route, **extras)


def closed_form_zeta0(dim: int, a: float) -> EvalResult:
    """-1 + a/6 + 1/(6a) in dimension 2, -1 in dimension 3."""
    if dim == 2:
        return EvalResult(-1.0 + a / 6.0 + 1.0 / (6.0 * a), 4 * EPS * (1 + a))
    if dim == 3:
        return EvalResult(-1.0, 0.0)
    raise DomainError("closed forms exist for dimensions 2 and 3 only")


def _im_lngamma(z):
    return ln_gamma(z).value.imag


def _plana(f, cfg) -> EvalResult:
    return plana_integral(PlanaIntegrand(f), cfg)


def closed_form_zeta0_prime(dim: int, a: float, route: str = "a", cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """The explicit zeta'(0) expressions (dimension 2 or 3, route "a" or "b")."""
    route = route.lower()
    la = math.log(a)
    zp1, zp2 = CONSTANTS.zetaprime_minus1, CONSTANTS.zetaprime_minus2
    if dim == 2 and route == "a":
        c = 1.0 / (2.0 * a) + 1.0
        I1 = _plana(lambda y: -8.0 * _im_lngamma((0.5 + 1j * y) / a + 1.0), cfg)
        I2 = _plana(lambda y: -(1.0 / a**2) * hurwitz_zeta(2.0, (0.5 + 1j * y) / a + 1.0).value.imag, cfg)
        logF = Z_log_fredholm(DoubleZetaParams(0, a, -0.5, -0.25), cfg)
        parts = [
            EvalResult(-2 * LOG_2PI + 1 + a / 3 - (a + 1 / a) * la / 3, 0.0),
            ln_gamma(c) * 2.0,
            hurwitz_zeta(2.0, c) * (1 / (4 * a * a)),
            digamma(c) * (-1 / (2 * a)),
            hurwitz_zeta_sderiv(-1, c) * (-4 * a),
            I1,
            I2,
            logF * -2.0,
        ]
        return total(parts)
    if dim == 2 and route == "b":
        c = 1.0 + 1.0 / a
        I = _plana(lambda y: -4.0 * (_im_lngamma(1 + 1j * y / a) + _im_lngamma(c + 1j * y / a)), cfg)
        parts = [
            EvalResult(-(a / 3 + 1 / (3 * a)) * la - 2 * LOG_2PI + a / 3 + 1 + 1 / (2 * a) - 2 * a * zp1, 0.0),
            ln_gamma(c),
            hurwitz_zeta_sderiv(-1, c) * (-2 * a),
            I,
        ]
        return total(parts)
    if dim == 3 and route == "a":
        c = 1.0 / a + 1.0
        simple = z_invariants(SimpleZetaParams(1, 2, 1, -1), "a")  # gamma - 1 + 2 zeta_H'(-1,2) - log prod
        I1 = _plana(lambda y: 4.0 * (1j * ((1 + 1j * y) * ln_gamma((1 + 1j * y) / a + 1).value
                                          - (1 - 1j * y) * ln_gamma((1 - 1j * y) / a + 1).value)).real, cfg)
        I2 = _plana(lambda y: (2.0 / a**2) * (1j * ((1 + 1j * y) * hurwitz_zeta(2.0, (1 + 1j * y) / a + 1).value
                                                   - (1 - 1j * y) * hurwitz_zeta(2.0, (1 - 1j * y) / a + 1).value)).real, cfg)
        logF = Z_log_fredholm(DoubleZetaParams(1, a, 0.0, -1.0), cfg)
        parts = [
            simple.zeta0_prime,
            EvalResult(1.5 - a / 6 + 1 / a + 5 * la / 6 - 11 * LOG_2PI / 6, 0.0),
            ln_gamma(c) * 4.0,
            hurwitz_zeta(2.0, c) * (1 / a**2),
            digamma(c) * (-2 / a),
            hurwitz_zeta_sderiv(-1, c) * (-4 * a),
            hurwitz_zeta_sderiv(-2, c) * (2 * a * a),
            I1,
            I2,
            logF * -2.0,
        ]
        return total(parts)
    if dim == 3 and route == "b":
        c = 2.0 / a + 1.0

        def I1f(y):
            return -4.0 * (_im_lngamma(1 + 1j * y / a) + _im_lngamma(c + 1j * y / a))

        def I2f(y):
            u = np.pi * y / a
            log_ratio = -np.log(np.where(u > 1e-6, np.sinh(np.maximum(u, 1e-300)) / np.maximum(u, 1e-300), 1 + u * u / 6))
            return -2.0 * y * (log_ratio + 2.0 * ln_gamma(c + 1j * y / a).value.real)

        parts = [
            EvalResult(math.log(2) + 2 * zp1 - 1 + 5 * la / 6 - a / 6 - 5 * LOG_2PI / 6 - 2 * a * zp1 + a * a * zp2, 0.0),
            ln_gamma(c),
            hurwitz_zeta_sderiv(-1, c) * (-2 * a),
            hurwitz_zeta_sderiv(-2, c) * (a * a),
            _plana(I1f, cfg),
            _plana(I2f, cfg),
        ]
        return total(parts)
    raise DomainError("closed forms exist for dimensions 2 and 3, routes a and b")


# ---------------------------------------------------------------------------------
# first-order expansion in the deformation
# ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionCoefficients:
    """zeta'(0) at a = 1 and its first-order coefficient in a = 1 + delta.

    ``slope_Z`` comes from the explicit coefficient formula; ``slope_fd`` from a
    central difference of zeta'(0) over a = 1 -+ h.
    """

    zeta_prime_at_1: float
    slope_Z: float
    det_at_1: float
    det_slope: float
    slope_fd: float
    slope_err: float = 0.0


def collapsed_weight(alpha: int, x: float) -> List[Fraction]:
    """Coefficients in u = k + x of u * sum_{m=1}^{k-1} 2 m (k - m)^alpha (a polynomial of degree alpha + 3)."""
    deg = alpha + 2
    ks = list(range(2, 2 + deg + 1))
    vals = [Fraction(sum(2 * m * (k - m) ** alpha for m in range(1, k))) for k in ks]
    # Lagrange interpolation in exact arithmetic, then shift to u = k + x and multiply by u
    coeffs = [Fraction(0)] * (deg + 1)
    for i, ki in enumerate(ks):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, kj in enumerate(ks):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-kj), Fraction(1)])
                denom *= ki - kj
        for d, b in enumerate(basis):
            coeffs[d] += vals[i] * b / denom
    shifted = _poly_shift(coeffs, -Fraction(x).limit_denominator(10**6))
    return _poly_mul(shifted, [Fraction(0), Fraction(1)])


def double_slope_at_1(params: DoubleZetaParams) -> EvalResult:
    """d/da Z'(0; alpha, a, x, p) at a = 1.

    d/da Z(s) = -s W(s + 1) with W(s) = sum 2 m n^alpha (a m + n + x) [(a m + n + x)^2 + p]^(-s),
    so the derivative of Z'(0) is minus the finite part of W at s = 1.  At a = 1 the
    double sum collapses onto k = m + n and W becomes a combination of simple zeta
    functions z(s; i, 2, x + 1, p), whose finite parts are explicit.
    """
    w = collapsed_weight(params.alpha, params.x)
    parts = []
    for i, c in enumerate(w):
        if c == 0:
            continue
        L = z_laurent(SimpleZetaParams(i, 2, params.x + 1, params.p), 1.0)
        parts.append(L.result(0, real=True) * (-float(c)))
    return total(parts)


def expansion(dim: int, h: float = 1e-4, cfg: QuadratureConfig = DEFAULT_CONFIG,
              tol: float = 1e-5) -> ExpansionCoefficients:
    """Round-sphere zeta'(0) and its first-order coefficient, computed two ways."""
    if dim not in (2, 3):
        raise DomainError("expansion is provided for dimensions 2 and 3")
    dec = _decompose_any_a(dim, 1.0)
    slope = total(double_slope_at_1(dp) * float(c) for c, dp in dec.double)
    _, z1 = pipeline_invariants(dim, 1.0, "a", cfg)
    zp = pipeline_invariants(dim, 1.0 + h, "a", cfg)[1].value
    zm = pipeline_invariants(dim, 1.0 - h, "a", cfg)[1].value
    fd = (zp - zm) / (2 * h)
    if abs(fd - slope.value) > tol:
        raise RouteDisagreementError(f"expansion slope {slope.value!r} and finite difference {fd!r} disagree")
    det1 = math.exp(-z1.value)
    return ExpansionCoefficients(z1.value, slope.value, det1, -slope.value * det1, fd, slope.abs_err)


def spectral_zeta(sphere: DeformedSphere, s: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """zeta(s) of the Laplacian at a point of convergence (s > dim / 2), through the decomposition."""
    if not s > sphere.dim / 2.0:
        raise DomainError(f"the spectral series converges only for s > {sphere.dim / 2:g}")
    dec = decompose(sphere)
    parts = [z_value(sp, s) * float(c) for c, sp in dec.simple]
    parts += [Z_continued(dp, s, cfg) * float(c) for c, dp in dec.double]
    return total(parts)
