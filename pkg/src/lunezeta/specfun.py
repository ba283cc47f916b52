"""Gamma-family and Hurwitz-zeta-family functions on real and complex arguments.

All evaluators accept scalars or numpy arrays for the complex argument and return
an :class:`EvalResult` whose ``abs_err`` combines the first omitted asymptotic
term with a rounding allowance. Scalars in give scalars out.

The Hurwitz zeta function is evaluated by Euler-Maclaurin summation after shifting
the argument so that ``Re(x + M)`` is large; the s-derivative uses the termwise
differentiated formula rather than numerical differentiation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .result import EPS, DomainError, EvalResult, PoleError, accumulate

#: Bernoulli order used in every asymptotic tail (terms B_2 .. B_{2K}).
BERNOULLI_ORDER = 12
_SHIFT_POSITIVE_S = 15.0
_SHIFT_NONPOSITIVE_S = 5.0
_SHIFT_NEGATIVE_S = 4.0
_STIRLING_SHIFT = 15.0


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0 .. B_n as exact fractions (B_1 = -1/2)."""
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b[m] = -acc / (m + 1)
    return tuple(b)


_B = bernoulli_numbers(2 * BERNOULLI_ORDER + 4)
# B_{2k}/(2k)! for k = 1..K+1
_EM_COEF = np.array([float(_B[2 * k] / math.factorial(2 * k)) for k in range(1, BERNOULLI_ORDER + 2)])
# B_{2k}/(2k(2k-1)) for Stirling's series
_STIRLING_COEF = np.array([float(_B[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, BERNOULLI_ORDER + 2)])
_B2K = np.array([float(_B[2 * k]) for k in range(1, BERNOULLI_ORDER + 2)])


@dataclass(frozen=True)
class Constants:
    gamma_euler: float
    log_2pi: float
    zeta3: float
    zetaprime_minus1: float
    zetaprime_minus2: float


CONSTANTS = Constants(
    gamma_euler=0.57721566490153286060651209008240243,
    log_2pi=1.83787706640934548356065947281123527,
    zeta3=1.20205690315959428539973816151144999,
    zetaprime_minus1=-0.16542114370045092921391966024278064,
    zetaprime_minus2=-0.03044845705839327078063904163166482,
)

EULER_GAMMA = CONSTANTS.gamma_euler
LOG_2PI = CONSTANTS.log_2pi


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _finish(value, err, scalar, real_in=False):
    if not (np.all(np.isfinite(value))):
        raise OverflowError("special function evaluation overflowed")
    if scalar:
        value = complex(value)
        if real_in and value.imag == 0.0:
            value = value.real
        return EvalResult(value, float(np.max(err)))
    return EvalResult(value, float(np.max(err)) if np.size(err) else 0.0)


def _check_not_pole(z):
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError("argument is a non-positive integer")


def _shift(z, target):
    lo = float(np.min(z.real)) if z.size else target
    return max(0, int(math.ceil(target - lo)))


def _direct_terms(z, count):
    return z[..., None] + np.arange(count)


# ----------------------------------------------------------------------------
# log Gamma and polygamma
# ----------------------------------------------------------------------------

def _lngamma(z):
    """Principal log Gamma for a complex array; returns (value, err)."""
    M = _shift(z, _STIRLING_SHIFT)
    zz = z + M
    inv = 1.0 / zz
    inv2 = inv * inv
    series = np.zeros_like(zz)
    p = inv.copy()
    for c in _STIRLING_COEF[:-1]:
        series = series + c * p
        p = p * inv2
    err = np.abs(_STIRLING_COEF[-1] * p)
    val = (zz - 0.5) * np.log(zz) - zz + 0.5 * LOG_2PI + series
    if M:
        logs = np.log(_direct_terms(z, M))
        val = val - accumulate(logs)
        err = err + EPS * np.sum(np.abs(logs), axis=-1)
    err = err + EPS * (np.abs(val) + np.abs(zz * np.log(zz)))
    return val, err


def ln_gamma(z) -> EvalResult:
    """log Gamma(z) on the principal branch.

    The branch is the one given by summing principal logarithms in the recurrence,
    which is analytic on ``Re z > 0`` and satisfies ``ln_gamma(conj z) = conj``.
    """
    real_in = np.isrealobj(z)
    z, scalar = _as_complex(z)
    _check_not_pole(z)
    val, err = _lngamma(z)
    return _finish(val, err, scalar, real_in)


def _polygamma(k, z):
    M = _shift(z, _STIRLING_SHIFT)
    zz = z + M
    inv = 1.0 / zz
    inv2 = inv * inv
    if k == 0:
        val = np.log(zz) - 0.5 * inv
        p = inv2.copy()
        for j, b in enumerate(_B2K[:-1], start=1):
            val = val - b / (2 * j) * p
            p = p * inv2
        err = np.abs(_B2K[-1] / (2 * len(_B2K)) * p)
    else:
        # (-1)^(k+1) [ (k-1)!/z^k + k!/(2 z^(k+1)) + sum B_2j (2j+k-1)!/(2j)! / z^(2j+k) ]
        sign = (-1) ** (k + 1)
        zk = inv ** k
        val = math.factorial(k - 1) * zk + math.factorial(k) / 2 * zk * inv
        p = zk * inv2
        for j, b in enumerate(_B2K[:-1], start=1):
            val = val + b * math.factorial(2 * j + k - 1) / math.factorial(2 * j) * p
            p = p * inv2
        jn = len(_B2K)
        err = np.abs(_B2K[-1] * math.factorial(2 * jn + k - 1) / math.factorial(2 * jn) * p)
        val = sign * val
    if M:
        terms = _direct_terms(z, M) ** (-(k + 1))
        corr = accumulate(terms) * ((-1) ** k * math.factorial(k))
        val = val - corr
        err = err + EPS * math.factorial(k) * np.sum(np.abs(terms), axis=-1)
    err = err + 4 * EPS * np.abs(val)
    return val, err


def polygamma(k: int, z) -> EvalResult:
    """Polygamma function psi^(k)(z) for k in {0, 1, 2}."""
    if k not in (0, 1, 2):
        raise DomainError("polygamma is implemented for orders 0, 1, 2 only")
    real_in = np.isrealobj(z)
    z, scalar = _as_complex(z)
    _check_not_pole(z)
    val, err = _polygamma(k, z)
    return _finish(val, err, scalar, real_in)


def digamma(z) -> EvalResult:
    return polygamma(0, z)


# ----------------------------------------------------------------------------
# Hurwitz zeta
# ----------------------------------------------------------------------------

def _poch_and_derivative(s, m):
    """Rising factorial (s)_m and its s-derivative."""
    factors = s + np.arange(m)
    value = float(np.prod(factors))
    deriv = 0.0
    for i in range(m):
        deriv += float(np.prod(np.delete(factors, i)))
    return value, deriv


@lru_cache(maxsize=512)
def _em_table(s):
    """B_2k/(2k)! * (s)_{2k-1} and its s-derivative, k = 1..K+1."""
    vals = np.empty(len(_EM_COEF))
    ders = np.empty(len(_EM_COEF))
    for i, c in enumerate(_EM_COEF):
        v, d = _poch_and_derivative(s, 2 * i + 1)
        vals[i] = c * v
        ders[i] = c * d
    return vals, ders


def _is_nonpositive_integer(s):
    return s <= 0 and float(s).is_integer()


def _bernoulli_poly(n, x):
    out = np.zeros_like(x)
    for k in range(n + 1):
        out = out + float(math.comb(n, k) * _B[k]) * x ** (n - k)
    return out


def _check_hurwitz_domain(x):
    if np.any(x.real <= 0):
        raise DomainError("Hurwitz zeta requires Re(x) > 0")


def _shift_target(s):
    # For s <= 0 the direct terms grow like n^|s| and cancel against the tail, so the
    # shift is kept as small as the truncation error allows.
    if s > 0:
        return _SHIFT_POSITIVE_S
    return _SHIFT_NONPOSITIVE_S if s > -2 else _SHIFT_NEGATIVE_S


def _hurwitz(s, x):
    """Value and error of zeta_H(s, x), x a complex array with Re x > 0."""
    s = float(s)
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if _is_nonpositive_integer(s):
        n = int(-s)
        val = -_bernoulli_poly(n + 1, x) / (n + 1)
        scale = sum(abs(float(math.comb(n + 1, k) * _B[k])) * np.abs(x) ** (n + 1 - k) for k in range(n + 2))
        return val, 4 * EPS * (scale / (n + 1) + np.abs(val))
    M = _shift(x, _shift_target(s))
    N = x + M
    logN = np.log(N)
    Ns = np.exp(-s * logN)
    invN = 1.0 / N
    inv2 = invN * invN
    coef, _ = _em_table(s)
    val = N * Ns / (s - 1.0) + 0.5 * Ns
    scale = np.abs(val)
    p = Ns * invN
    for c in coef[:-1]:
        val = val + c * p
        p = p * inv2
    err = np.abs(coef[-1] * p)
    if M:
        terms = np.exp(-s * np.log(_direct_terms(x, M)))
        val = val + accumulate(terms)
        scale = scale + np.sum(np.abs(terms), axis=-1)
    err = err + 8 * EPS * (scale + np.abs(val))
    return val, err


def _hurwitz_ds(s, x):
    """Value and error of d/ds zeta_H(s, x)."""
    s = float(s)
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if s == 0.0:
        val, err = _lngamma(x)
        return val - 0.5 * LOG_2PI, err + EPS
    M = _shift(x, _shift_target(s))
    N = x + M
    logN = np.log(N)
    Ns = np.exp(-s * logN)
    invN = 1.0 / N
    inv2 = invN * invN
    coef, dcoef = _em_table(s)
    val = -logN * N * Ns / (s - 1.0) - N * Ns / (s - 1.0) ** 2 - 0.5 * logN * Ns
    scale = np.abs(val)
    p = Ns * invN
    for c, dc in zip(coef[:-1], dcoef[:-1]):
        val = val + (dc - logN * c) * p
        p = p * inv2
    err = np.abs((dcoef[-1] - logN * coef[-1]) * p)
    if M:
        shifted = _direct_terms(x, M)
        logs = np.log(shifted)
        terms = -logs * np.exp(-s * logs)
        val = val + accumulate(terms)
        scale = scale + np.sum(np.abs(terms), axis=-1)
    err = err + 8 * EPS * (scale + np.abs(val))
    return val, err


def hurwitz_zeta(s: float, x) -> EvalResult:
    """Analytic continuation in s of sum_{n>=0} (n + x)^(-s), for real s and Re x > 0."""
    real_in = np.isrealobj(x)
    x, scalar = _as_complex(x)
    _check_hurwitz_domain(x)
    val, err = _hurwitz(s, x)
    return _finish(val, err, scalar, real_in)


def hurwitz_zeta_sderiv(s0: float, x) -> EvalResult:
    """d/ds zeta_H(s, x) at s = s0.

    Any real ``s0 != 1`` is accepted; the sphere formulas use s0 = 0, -1, -2 and, in
    higher dimension, further non-positive integers.
    """
    real_in = np.isrealobj(x)
    x, scalar = _as_complex(x)
    _check_hurwitz_domain(x)
    val, err = _hurwitz_ds(s0, x)
    return _finish(val, err, scalar, real_in)


def hurwitz_zeta_xderiv(s: float, x) -> EvalResult:
    """d/dx zeta_H(s, x) = -s zeta_H(s+1, x), with the s = 0 limit equal to -1."""
    real_in = np.isrealobj(x)
    x, scalar = _as_complex(x)
    _check_hurwitz_domain(x)
    if s == 0:
        return _finish(-np.ones_like(x), np.zeros(x.shape), scalar, real_in)
    val, err = _hurwitz(s + 1.0, x)
    return _finish(-s * val, abs(s) * err, scalar, real_in)


def hurwitz_zeta_sderiv_xderiv(s: float, x) -> EvalResult:
    """d/dx of d/ds zeta_H(s, x): -zeta_H(s+1, x) - s d/ds zeta_H(s+1, x).

    At s = 0 both pieces are singular and the limit is psi(x).
    """
    real_in = np.isrealobj(x)
    x, scalar = _as_complex(x)
    _check_hurwitz_domain(x)
    if s == 0:
        val, err = _polygamma(0, x)
        return _finish(val, err, scalar, real_in)
    v1, e1 = _hurwitz(s + 1.0, x)
    v2, e2 = _hurwitz_ds(s + 1.0, x)
    return _finish(-v1 - s * v2, e1 + abs(s) * e2, scalar, real_in)


def hurwitz_shift_expansion(s: float, x: float, q: float, delta: float) -> EvalResult:
    """Second-order expansion of zeta_H(s, 1 + x + q*delta) in delta.

    zeta_H(s,1+x) - s zeta_H(s+1,1+x) q delta + s(s+1)/2 zeta_H(s+2,1+x) (q delta)^2,
    with the coefficients read as limits where s + 1 or s + 2 hits the pole.
    """
    base = 1.0 + x
    h = q * delta
    v0 = hurwitz_zeta(s, base)
    if s == 0.0:
        c1 = EvalResult(-1.0, 0.0)
    else:
        c1 = hurwitz_zeta(s + 1.0, base) * (-s)
    if s == -1.0:
        # s(s+1)/2 zeta_H(s+2) -> -1/2 * residue = -1/2
        c2 = EvalResult(-0.5, 0.0)
    elif s == 0.0:
        c2 = EvalResult(0.0, 0.0)
    else:
        c2 = hurwitz_zeta(s + 2.0, base) * (s * (s + 1.0) / 2.0)
    out = v0 + c1 * h + c2 * (h * h)
    return EvalResult(out.value, out.abs_err)


def hurwitz_sderiv_shift_expansion(s: float, x: float, q: float, delta: float) -> EvalResult:
    """Second-order expansion of d/ds zeta_H(s, 1 + x + q*delta) in delta.

    First coefficient -(zeta_H(s+1) + s zeta_H'(s+1)), second
    (s + 1/2) zeta_H(s+2) + s(s+1)/2 zeta_H'(s+2); both taken as limits at s = 0, -1.
    """
    base = 1.0 + x
    h = q * delta
    v0 = hurwitz_zeta_sderiv(s, base)
    c1 = hurwitz_zeta_sderiv_xderiv(s, base)
    if s == 0.0:
        c2 = 0.5 * polygamma(1, base).value
    elif s == -1.0:
        c2 = 0.5 * (1.0 + polygamma(0, base).value)
    else:
        c2 = (s + 0.5) * hurwitz_zeta(s + 2.0, base).value + s * (s + 1.0) / 2.0 * hurwitz_zeta_sderiv(
            s + 2.0, base
        ).value
    out = v0.value + c1.value * h + c2 * h * h
    return EvalResult(out, v0.abs_err + c1.abs_err * abs(h) + 1e-14 * abs(c2 * h * h))
