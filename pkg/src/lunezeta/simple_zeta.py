"""The simple zeta class

    z(s; alpha, beta, x, p) = sum_{n>=1} (n + x)^alpha [(n + x)^beta + p]^(-s),

which carries the m = 0 part of every deformed-sphere spectrum.

z(0) and z'(0) come from the shift formula applied to T0 = {(n + x)^beta} with
multiplicity (n + x)^alpha, whose zeta function is a single Hurwitz zeta.  When
alpha is an integer and beta = 2 the squared-sequence formula gives an
independent second evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from .result import EPS, DomainError, EvalResult, accumulate, total
from .seq_zeta import (
    ShiftedInvariants,
    SpectralSequence,
    log_fredholm,
    shift_invariants,
    sqrt_shift,
    square_product_invariants,
)
from .series import Laurent, binomial_neg
from .specfun import digamma, hurwitz_zeta, hurwitz_zeta_sderiv

_DIRECT_TERMS = 60
_MAX_BINOMIAL = 200


@dataclass(frozen=True)
class SimpleZetaParams:
    alpha: float
    beta: float
    x: float
    p: float

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError("alpha must be non-negative")
        if self.beta <= 0:
            raise DomainError("beta must be positive")
        if 1 + self.x <= 0:
            raise DomainError("need n + x > 0 for all n >= 1")
        if (1 + self.x) ** self.beta + self.p <= 0:
            raise DomainError("need (n + x)^beta + p > 0 for all n >= 1")

    @property
    def critical(self) -> float:
        """(1 + alpha) / beta, the abscissa of convergence."""
        return (1.0 + self.alpha) / self.beta

    @property
    def integer_branch(self) -> int | None:
        """J when (1 + alpha) / beta is a positive integer J, else None."""
        c = self.critical
        J = round(c)
        return J if J >= 1 and abs(c - J) < 1e-12 else None


class PowerSequence(SpectralSequence):
    """T0 = {(n + x)^beta}_{n>=1} with multiplicity (n + x)^alpha.

    zeta(s, T0) = zeta_H(beta s - alpha, x + 1): one simple pole at s = (1+alpha)/beta
    with residue 1/beta; the genus is floor((1+alpha)/beta).
    """

    def __init__(self, alpha: float, beta: float, x: float):
        self.alpha, self.beta, self.x = float(alpha), float(beta), float(x)
        self.genus = int(math.floor((1.0 + self.alpha) / self.beta + 1e-12))
        self.lambda_min = (1.0 + self.x) ** self.beta
        self._cache = {}

    def _arg(self, j):
        return self.beta * j - self.alpha

    def _is_pole(self, j):
        return abs(self._arg(j) - 1.0) < 1e-12

    def zeta_at(self, j):
        if j not in self._cache:
            self._cache[j] = hurwitz_zeta(self._arg(j), self.x + 1)
        return self._cache[j]

    def res1_at(self, j):
        return EvalResult(1.0 / self.beta if self._is_pole(j) else 0.0, 0.0)

    def res0_at(self, j):
        if self._is_pole(j):
            return -digamma(self.x + 1)
        return self.zeta_at(j)

    def zeta0(self):
        return hurwitz_zeta(-self.alpha, self.x + 1)

    def zeta0_prime(self):
        return hurwitz_zeta_sderiv(-self.alpha, self.x + 1) * self.beta


class LinearPowerSequence(SpectralSequence):
    """T = {n + x + delta}_{n>=1} with multiplicity (n + x)^alpha, alpha a non-negative integer.

    Writing (n + x)^alpha = sum_i C(alpha, i) (-delta)^(alpha-i) (n + x + delta)^i gives
    zeta(s, T) = sum_i C(alpha, i) (-delta)^(alpha-i) zeta_H(s - i, x + delta + 1).
    """

    def __init__(self, alpha: int, x: float, delta: complex = 0.0):
        if int(alpha) != alpha or alpha < 0:
            raise DomainError("the linear sequence needs a non-negative integer alpha")
        self.alpha, self.x, self.delta = int(alpha), x, delta
        self.genus = self.alpha + 1
        self.lambda_min = abs(1.0 + x + delta)

    def _terms(self):
        for i in range(self.alpha + 1):
            yield i, math.comb(self.alpha, i) * (-self.delta) ** (self.alpha - i)

    def _combine(self, fn, s):
        parts = [fn(s - i, self.x + self.delta + 1) * c for i, c in self._terms() if c != 0]
        return total(parts)

    def zeta_at(self, j):
        return self._combine(hurwitz_zeta, j)

    def zeta0(self):
        return self._combine(hurwitz_zeta, 0)

    def zeta0_prime(self):
        return self._combine(hurwitz_zeta_sderiv, 0)

    def res1_at(self, j):
        # only the i = alpha term, coefficient 1, is singular: at s = alpha + 1
        return EvalResult(1.0 if j == self.alpha + 1 else 0.0, 0.0)

    def res0_at(self, j):
        raise NotImplementedError("finite parts of the linear sequence are not needed")

    def shifted(self, delta):
        return LinearPowerSequence(self.alpha, self.x, self.delta + delta)


def _binomial_tail(params: SimpleZetaParams, s: float, start: float) -> EvalResult:
    """sum_{n>=start} (n + x)^alpha [(n + x)^beta + p]^(-s) by the binomial series in p."""
    q = start + params.x  # smallest base in the tail
    ratio = abs(params.p) / q**params.beta
    if ratio >= 1:
        raise DomainError("binomial tail diverges; start further out")
    parts = []
    coeff = 1.0
    for j in range(_MAX_BINOMIAL):
        if j:
            coeff *= (-s - (j - 1)) / j
        term = hurwitz_zeta(params.beta * (s + j) - params.alpha, q) * (coeff * params.p**j)
        parts.append(term)
        if abs(term.value) * ratio / (1 - ratio) < 1e-17 * max(1.0, abs(parts[0].value)) or coeff == 0:
            break
    return total(parts)


def z_value(params: SimpleZetaParams, s: float) -> EvalResult:
    """The defining series at s > (1 + alpha)/beta: direct terms plus a binomial tail."""
    if s <= params.critical:
        raise DomainError(f"series converges only for s > {params.critical:g}")
    n = np.arange(1, _DIRECT_TERMS + 1, dtype=float) + params.x
    terms = n**params.alpha * (n**params.beta + params.p) ** (-s)
    head = float(accumulate(terms))
    tail = _binomial_tail(params, s, _DIRECT_TERMS + 1)
    return EvalResult(head + tail.value, tail.abs_err + 4 * EPS * float(np.sum(np.abs(terms))))


def z_continued(params: SimpleZetaParams, s: float) -> EvalResult:
    """Analytic continuation sum_j C(-s, j) p^j zeta_H(beta(s+j) - alpha, x + 1) at a regular s."""
    return _binomial_tail(params, s, 1)


def z_laurent(params: SimpleZetaParams, s0: float, target_abs_err: float = 1e-15) -> Laurent:
    """Residue and finite part of z(s) at s = s0 (orders -1 and 0).

    Uses the binomial continuation; the j-th term is singular exactly when
    beta(s0 + j) - alpha = 1.  Needs |p| < (1 + x)^beta.
    """
    ratio = abs(params.p) / (1 + params.x) ** params.beta
    if ratio >= 1:
        raise DomainError("binomial continuation needs |p| < (1 + x)^beta")
    out = Laurent(0, [0.0], hi=0)
    for j in range(_MAX_BINOMIAL):
        arg = params.beta * (s0 + j) - params.alpha
        b = binomial_neg(s0, j) * (params.p**j)
        if abs(arg - 1.0) < 1e-12:
            # zeta_H(1 + beta eps, x+1) = 1/(beta eps) - psi(x + 1) + O(eps)
            psi = digamma(params.x + 1)
            hz = Laurent.simple_pole(1.0 / params.beta, -psi.value, fin_err=psi.abs_err)
        else:
            h = hurwitz_zeta(arg, params.x + 1)
            hz = Laurent(0, [h.value], hi=0, err=[h.abs_err])
        term = b * hz
        out = out + term
        size = abs(term[0]) + abs(term[-1]) if term.lo < 0 else abs(term[0])
        if j > 2 and size * ratio / (1 - ratio) < target_abs_err:
            out = out + Laurent(0, [0.0], hi=0, err=[size * ratio / (1 - ratio)])
            break
    return out


def z_poles(params: SimpleZetaParams, floor: float = -10.0) -> List[Tuple[float, float]]:
    """Poles (1 + alpha)/beta - j >= floor with their residues; non-positive integers excluded."""
    out = []
    for j in range(_MAX_BINOMIAL):
        loc = params.critical - j
        if loc < floor:
            break
        if loc <= 0 and abs(loc - round(loc)) < 1e-12:
            continue
        res = binomial_neg(loc, j)[0].real * params.p**j / params.beta
        if res != 0.0:
            out.append((loc, res))
    return out


@lru_cache(maxsize=256)
def _invariants_a(params: SimpleZetaParams) -> ShiftedInvariants:
    T0 = PowerSequence(params.alpha, params.beta, params.x)
    return shift_invariants(T0, params.p).real()


@lru_cache(maxsize=256)
def _invariants_b(params: SimpleZetaParams) -> ShiftedInvariants:
    if params.beta != 2 or int(params.alpha) != params.alpha:
        raise DomainError("the squared-sequence route needs beta = 2 and integer alpha")
    T0 = LinearPowerSequence(int(params.alpha), params.x)
    return square_product_invariants(T0, sqrt_shift(params.p), genus_p=T0.genus)


def z_invariants(params: SimpleZetaParams, route: str = "a") -> ShiftedInvariants:
    """z(0) and z'(0) by the shift formula (route "a") or the squared-sequence formula ("b")."""
    route = route.lower()
    if route == "a":
        return _invariants_a(params)
    if route == "b":
        return _invariants_b(params)
    raise ValueError(f"unknown route {route!r}")


def z_zeta0(params: SimpleZetaParams) -> EvalResult:
    """z(0; alpha, beta, x, p): zeta_H(-alpha, x+1), plus (-1)^J p^J / (alpha+1) when J = (1+alpha)/beta is an integer."""
    return z_invariants(params, "a").zeta0


def z_zeta0_prime(params: SimpleZetaParams) -> EvalResult:
    """z'(0; alpha, beta, x, p) including the logarithmic Fredholm term."""
    return z_invariants(params, "a").zeta0_prime


def z_log_fredholm(params: SimpleZetaParams) -> EvalResult:
    """log of the genus-regularised product over {(n + x)^beta} with multiplicity (n + x)^alpha, at p."""
    return log_fredholm(PowerSequence(params.alpha, params.beta, params.x), params.p)
