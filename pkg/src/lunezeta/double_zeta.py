"""The double zeta class

    Z(s; alpha, a, x, p) = sum_{m,n>=1} n^alpha [(a m + n + x)^2 + p]^(-s),

built on the unshifted double series chi(s; alpha, a, x) = sum n^alpha (a m + n + x)^(-s).

Applying the Plana summation formula to the n-sum and then summing over m gives,
with c = (x + 1)/a + 1,

    chi(s) = 1/2 a^(-s) zeta_H(s, c)
           + sum_{k=1}^{alpha+1} alpha!/(alpha-k+1)! / prod_{i=1}^k (s - i) * a^(k-s) zeta_H(s - k, c)
           + a^(-s) int_0^inf i[(1+iy)^alpha zeta_H(s, c + iy/a) - (1-iy)^alpha zeta_H(s, c - iy/a)]
                          / (exp(2 pi y) - 1) dy,

valid for all s away from the simple poles at s = 1, ..., alpha + 2.  Residues and
finite parts are read off this formula term by term (:class:`~lunezeta.series.Laurent`),
never fitted numerically.

Z(0) and Z'(0) are then available two ways:

* route A: shift formula on S0 = {(a m + n + x)^2}, zeta(s, S0) = chi(2s);
* route B: squared-sequence formula on {a m + n + x} with shifts x -+ sqrt(-p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from .quadrature import DEFAULT_CONFIG, PlanaIntegrand, QuadratureConfig, plana_integral
from .result import DomainError, EvalResult, PoleError, RouteDisagreementError
from .seq_zeta import (
    ShiftedInvariants,
    SpectralSequence,
    shift_invariants,
    sqrt_shift,
    square_product_invariants,
)
from .series import Laurent, binomial_neg, rational_poles
from .specfun import digamma, hurwitz_zeta, hurwitz_zeta_sderiv, polygamma

#: Default extra allowance when comparing route A with route B.
ROUTE_TOL = 1e-9


@dataclass(frozen=True)
class DoubleZetaParams:
    alpha: int
    a: float
    x: float
    p: float

    def __post_init__(self):
        if int(self.alpha) != self.alpha or self.alpha < 0:
            raise DomainError("alpha must be a non-negative integer (general alpha is not supported)")
        object.__setattr__(self, "alpha", int(self.alpha))
        if not self.a > 0:
            raise DomainError("a must be positive")
        base = self.a + 1 + self.x
        if base <= 0:
            raise DomainError("need a m + n + x > 0 for all m, n >= 1")
        if base**2 + self.p <= 0:
            raise DomainError("need (a m + n + x)^2 + p > 0 for all m, n >= 1")

    @property
    def lambda_min(self) -> float:
        return (self.a + 1 + self.x) ** 2


def _falling(alpha: int, k: int) -> int:
    """alpha (alpha-1) ... (alpha-k+1); k = 0 gives 1."""
    out = 1
    for i in range(k):
        out *= alpha - i
    return out


def _check_chi_args(alpha, a, x):
    if int(alpha) != alpha or alpha < 0:
        raise DomainError("alpha must be a non-negative integer")
    if not a > 0:
        raise DomainError("a must be positive")
    c = (x + 1) / a + 1
    if complex(c).real <= 0:
        raise DomainError("(x + 1)/a + 1 must have positive real part")
    return int(alpha), c


def _hurwitz_laurent(s0: float, c, order: int) -> Laurent:
    """zeta_H(s, c) about s = s0 through ``order`` (a simple pole when s0 = 1)."""
    if s0 == 1.0:
        psi = digamma(c)
        return Laurent.simple_pole(1.0, -psi.value, fin_err=psi.abs_err)
    v = hurwitz_zeta(s0, c)
    if order <= 0:
        return Laurent(0, [v.value], hi=0, err=[v.abs_err])
    d = hurwitz_zeta_sderiv(s0, c)
    return Laurent(0, [v.value, d.value], hi=1, err=[v.abs_err, d.abs_err])


def _is_int(s0: float) -> bool:
    return float(s0).is_integer()


def _plana_laurent(s0: float, alpha: int, a: float, c, order: int, cfg: QuadratureConfig) -> Laurent:
    """a^(-s) I(s) about s0, I the Plana integral of the chi formula."""
    real = np.isrealobj(c) or complex(c).imag == 0.0
    ca = complex(c)

    def weights(y):
        return (1 + 1j * y) ** alpha, (1 - 1j * y) ** alpha

    if s0 == 1.0:
        # zeta_H(s, w) = 1/(s-1) - psi(w) + ...: the residue piece only involves the
        # polynomial weights; it vanishes for alpha = 0.
        def f(y):
            wp, wm = weights(y)
            z = np.concatenate([ca + 1j * y / a, ca - 1j * y / a])
            psi = polygamma(0, z).value
            n = y.size
            res = 1j * (wp - wm)
            fin = 1j * (-wp * psi[:n] + wm * psi[n:])
            return _as_real(np.stack([res, fin]), real)

        I = plana_integral(PlanaIntegrand(f, name="chi-plana-pole"), cfg)
        inner = Laurent.simple_pole(I.value[0], I.value[1], I.abs_err, I.abs_err)
    else:
        def f(y):
            wp, wm = weights(y)
            z = np.concatenate([ca + 1j * y / a, ca - 1j * y / a])
            n = y.size
            hz = hurwitz_zeta(s0, z).value
            comps = [1j * (wp * hz[:n] - wm * hz[n:])]
            if order >= 1:
                hd = hurwitz_zeta_sderiv(s0, z).value
                comps.append(1j * (wp * hd[:n] - wm * hd[n:]))
            return _as_real(np.stack(comps), real)

        I = plana_integral(PlanaIntegrand(f, name="chi-plana"), cfg)
        vals = np.atleast_1d(I.value)
        inner = Laurent(0, list(vals), hi=len(vals) - 1, err=[I.abs_err] * len(vals))
    return Laurent.exp_linear(a ** (-s0), -math.log(a), order=2) * inner


def _as_real(arr, real):
    return arr.real if real else arr


def chi_terms(s0: float, alpha: int, a: float, x, order: int = 1,
              cfg: QuadratureConfig = DEFAULT_CONFIG) -> Dict[str, Laurent]:
    """Laurent expansions about s = s0 of the named terms of the chi formula.

    ``order`` is the highest Taylor order wanted at a regular point (0 for values,
    1 when the s-derivative is needed).  At a pole the residue (order -1) and the
    finite part (order 0) are always available.
    """
    alpha, c = _check_chi_args(alpha, a, x)
    s0 = float(s0)
    loga = math.log(a)
    terms: Dict[str, Laurent] = {}
    terms["half"] = 0.5 * Laurent.exp_linear(a ** (-s0), -loga) * _hurwitz_laurent(s0, c, order)
    for k in range(1, alpha + 2):
        roots = list(range(1, k + 1))
        pole_here = _is_int(s0) and 1 <= s0 <= k
        rat = rational_poles(s0, roots) * _falling(alpha, k - 1)
        need = order + (1 if pole_here else 0)
        # the Hurwitz factor is singular only at s0 - k = 1, never together with rat
        terms[f"k={k}"] = rat * Laurent.exp_linear(a ** (k - s0), -loga) * _hurwitz_laurent(s0 - k, c, need)
    terms["plana"] = _plana_laurent(s0, alpha, a, c, order, cfg)
    return terms


def chi_laurent(s0: float, alpha: int, a: float, x, order: int = 1,
                cfg: QuadratureConfig = DEFAULT_CONFIG) -> Laurent:
    """Sum of :func:`chi_terms`."""
    out = None
    for t in chi_terms(s0, alpha, a, x, order, cfg).values():
        out = t if out is None else out + t
    return out


@dataclass(frozen=True)
class ChiEvaluation:
    """chi(s) together with its named decomposition."""

    value: EvalResult
    decomposition: List[Tuple[str, EvalResult]] = field(default_factory=list)


def _poles(alpha: int) -> range:
    return range(1, alpha + 3)


def chi(s: float, alpha: int, a: float, x, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ChiEvaluation:
    """chi(s; alpha, a, x) at a real s other than the poles 1, ..., alpha + 2."""
    if _is_int(s) and int(s) in _poles(int(alpha)):
        raise PoleError(f"chi has a pole at s = {int(s)}")
    real = complex(x).imag == 0.0
    terms = chi_terms(s, alpha, a, x, order=0, cfg=cfg)
    parts = [(name, t.result(0, real=real)) for name, t in terms.items()]
    value = EvalResult(sum(r.value for _, r in parts), sum(r.abs_err for _, r in parts))
    return ChiEvaluation(value, parts)


def chi_derivative(s: float, alpha: int, a: float, x, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """d/ds chi(s; alpha, a, x) at a regular point."""
    if _is_int(s) and int(s) in _poles(int(alpha)):
        raise PoleError(f"chi has a pole at s = {int(s)}")
    return chi_laurent(s, alpha, a, x, 1, cfg).result(1, real=complex(x).imag == 0.0)


def chi_residues(alpha: int, a: float, x, cfg: QuadratureConfig = DEFAULT_CONFIG) -> List[Tuple[int, EvalResult, EvalResult]]:
    """(j, Res1, Res0) of chi(s) at each s = j in 1..alpha+2.

    These refer to chi(s) itself; for chi(2s) at s = j/2 the residue is halved and
    the finite part is unchanged.
    """
    real = complex(x).imag == 0.0
    out = []
    for j in _poles(int(alpha)):
        L = chi_laurent(j, alpha, a, x, 0, cfg)
        out.append((j, L.result(-1, real), L.result(0, real)))
    return out


class _ChiSequenceBase(SpectralSequence):
    def __init__(self, alpha: int, a: float, x, cfg: QuadratureConfig = DEFAULT_CONFIG):
        self.alpha, c = _check_chi_args(alpha, a, x)
        self.a, self.x, self.cfg = float(a), x, cfg
        self._real = complex(x).imag == 0.0
        self._cache: Dict[Tuple[float, int], Laurent] = {}

    def _laurent(self, s0: float, order: int) -> Laurent:
        key = (float(s0), order)
        if key not in self._cache:
            # an order-1 expansion also serves order-0 requests
            if (float(s0), 1) in self._cache:
                return self._cache[(float(s0), 1)]
            self._cache[key] = chi_laurent(s0, self.alpha, self.a, self.x, order, self.cfg)
        return self._cache[key]

    def _res(self, L: Laurent, order: int) -> EvalResult:
        return L.result(order, real=self._real)


class SquaredChiSequence(_ChiSequenceBase):
    """S0 = {(a m + n + x)^2} with multiplicity n^alpha: zeta(s, S0) = chi(2s)."""

    def __init__(self, alpha, a, x, cfg=DEFAULT_CONFIG):
        super().__init__(alpha, a, x, cfg)
        self.genus = (self.alpha + 2) // 2
        self.lambda_min = abs(self.a + 1 + x) ** 2

    def zeta_at(self, j):
        return self._res(self._laurent(2 * j, 0), 0)

    def res1_at(self, j):
        return self._res(self._laurent(2 * j, 0), -1) * 0.5

    def res0_at(self, j):
        return self._res(self._laurent(2 * j, 0), 0)

    def zeta0(self):
        return self._res(self._laurent(0, 1), 0)

    def zeta0_prime(self):
        return self._res(self._laurent(0, 1), 1) * 2.0


class LinearChiSequence(_ChiSequenceBase):
    """T0 = {a m + n + x} with multiplicity n^alpha: zeta(s, T0) = chi(s)."""

    def __init__(self, alpha, a, x, cfg=DEFAULT_CONFIG):
        super().__init__(alpha, a, x, cfg)
        self.genus = self.alpha + 2
        self.lambda_min = abs(self.a + 1 + x)

    def zeta_at(self, j):
        return self._res(self._laurent(j, 0), 0)

    def res1_at(self, j):
        if j not in _poles(self.alpha):
            return EvalResult(0.0, 0.0)
        return self._res(self._laurent(j, 0), -1)

    def res0_at(self, j):
        return self._res(self._laurent(j, 0), 0)

    def zeta0(self):
        return self._res(self._laurent(0, 1), 0)

    def zeta0_prime(self):
        return self._res(self._laurent(0, 1), 1)

    def shifted(self, delta):
        return LinearChiSequence(self.alpha, self.a, self.x + delta, self.cfg)


@lru_cache(maxsize=512)
def _route_a(params: DoubleZetaParams, cfg: QuadratureConfig) -> ShiftedInvariants:
    S0 = SquaredChiSequence(params.alpha, params.a, params.x, cfg)
    return shift_invariants(S0, params.p).real()


@lru_cache(maxsize=512)
def _route_b(params: DoubleZetaParams, cfg: QuadratureConfig) -> ShiftedInvariants:
    T0 = LinearChiSequence(params.alpha, params.a, params.x, cfg)
    return square_product_invariants(T0, sqrt_shift(params.p), genus_p=T0.genus)


def Z_routes(params: DoubleZetaParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> Dict[str, ShiftedInvariants]:
    """Both evaluations, keyed "a" and "b"."""
    return {"a": _route_a(params, cfg), "b": _route_b(params, cfg)}


def Z_invariants(params: DoubleZetaParams, route: str = "a", cfg: QuadratureConfig = DEFAULT_CONFIG,
                 route_tol: float = ROUTE_TOL) -> ShiftedInvariants:
    """Z(0) and Z'(0).

    ``route`` is "a" (shift formula), "b" (squared-sequence formula) or "both"; the
    last returns the route A result after checking that the two agree within their
    combined error plus ``route_tol``.
    """
    route = route.lower()
    if route == "a":
        return _route_a(params, cfg)
    if route == "b":
        return _route_b(params, cfg)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    A, B = _route_a(params, cfg), _route_b(params, cfg)
    for name in ("zeta0", "zeta0_prime"):
        ra, rb = getattr(A, name), getattr(B, name)
        if abs(ra.value - rb.value) > ra.abs_err + rb.abs_err + route_tol:
            raise RouteDisagreementError(
                f"{name}: route A {ra.value!r} and route B {rb.value!r} differ by {abs(ra.value - rb.value):.3g}"
            )
    return A


def Z_continued(params: DoubleZetaParams, s: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                target_abs_err: float = 1e-15) -> EvalResult:
    """Z(s) = sum_j C(-s, j) p^j chi(2s + 2j) at a regular real s (binomial expansion in p)."""
    ratio = abs(params.p) / params.lambda_min
    if ratio >= 1:
        raise DomainError("binomial expansion needs |p| < (a + 1 + x)^2")
    acc = EvalResult(0.0, 0.0)
    for j in range(400):
        b = binomial_neg(s, j)[0].real * params.p**j
        if b == 0.0:
            if j > 0:
                break
            continue
        term = chi(2 * s + 2 * j, params.alpha, params.a, params.x, cfg).value * b
        acc = acc + term
        if j > 0 and abs(term.value) * ratio / (1 - ratio) < target_abs_err:
            return acc + EvalResult(0.0, abs(term.value) * ratio / (1 - ratio))
    return acc


def Z_log_fredholm(params: DoubleZetaParams, cfg: QuadratureConfig = DEFAULT_CONFIG) -> EvalResult:
    """log of the genus-regularised double product over {(a m + n + x)^2} at p."""
    from .seq_zeta import log_fredholm

    return log_fredholm(SquaredChiSequence(params.alpha, params.a, params.x, cfg), params.p)
