"""Truncated Laurent series in a local variable eps = s - s0.

Residues and finite parts of the continued zeta functions are read off products
of a few elementary factors (rational prefactors, powers a^(-s), Hurwitz zeta
values near a pole).  :class:`Laurent` multiplies such factors while tracking
which orders are still exact, so a coefficient is never reported beyond the
order at which the inputs were truncated.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .result import EvalResult

_EXACT = 10**6  # "valid to" marker for factors known to all orders


class Laurent:
    """c[lo] eps^lo + c[lo+1] eps^(lo+1) + ..., correct through order ``hi``.

    ``coef[i]`` is the coefficient of eps^(lo + i).  Each coefficient carries an
    absolute error in ``err``.  Coefficients may be complex.
    """

    __slots__ = ("lo", "hi", "coef", "err")

    def __init__(self, lo: int, coef: Sequence[complex], hi: int | None = None, err=None):
        self.lo = int(lo)
        self.coef = [complex(c) for c in coef]
        self.hi = self.lo + len(self.coef) - 1 if hi is None else int(hi)
        self.err = [0.0] * len(self.coef) if err is None else [float(e) for e in err]

    # constructors -----------------------------------------------------------------
    @classmethod
    def constant(cls, c, err: float = 0.0) -> "Laurent":
        return cls(0, [c], hi=_EXACT, err=[err])

    @classmethod
    def taylor(cls, coefs, errs=None, exact: bool = False) -> "Laurent":
        hi = _EXACT if exact else len(coefs) - 1
        return cls(0, coefs, hi=hi, err=errs)

    @classmethod
    def simple_pole(cls, residue, finite, res_err=0.0, fin_err=0.0) -> "Laurent":
        """residue/eps + finite, valid through order 0."""
        return cls(-1, [residue, finite], hi=0, err=[res_err, fin_err])

    @classmethod
    def inverse_linear(cls, shift: float, order: int = 2) -> "Laurent":
        """Expansion of 1/(eps + shift); a pure pole when shift == 0."""
        if shift == 0:
            return cls(-1, [1.0], hi=_EXACT)
        coefs = [(-1.0) ** k / shift ** (k + 1) for k in range(order + 1)]
        return cls(0, coefs, hi=order)

    @classmethod
    def exp_linear(cls, scale: complex, rate: complex, order: int = 2) -> "Laurent":
        """scale * exp(rate * eps), e.g. a^(-s) = a^(-s0) exp(-log(a) eps)."""
        coefs = [scale * rate**k / math.factorial(k) for k in range(order + 1)]
        return cls(0, coefs, hi=order)

    # access -----------------------------------------------------------------------
    def __getitem__(self, order: int) -> complex:
        if order > self.hi:
            raise ValueError(f"order {order} not available (series valid through {self.hi})")
        i = order - self.lo
        if i < 0 or i >= len(self.coef):
            return 0.0j
        return self.coef[i]

    def error(self, order: int) -> float:
        i = order - self.lo
        if i < 0 or i >= len(self.err):
            return 0.0
        return self.err[i]

    def result(self, order: int, real: bool = False) -> EvalResult:
        v = self[order]
        if real:
            v = v.real
        return EvalResult(v, self.error(order))

    @property
    def residue(self) -> complex:
        return self[-1]

    @property
    def finite(self) -> complex:
        return self[0]

    # arithmetic -------------------------------------------------------------------
    def _trim(self) -> "Laurent":
        top = min(self.hi, self.lo + len(self.coef) - 1)
        n = top - self.lo + 1
        return Laurent(self.lo, self.coef[:n], hi=self.hi, err=self.err[:n])

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.constant(other)
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        top = max(self.lo + len(self.coef), other.lo + len(other.coef)) - 1
        top = min(top, hi)
        coef = [_get(self, k) + _get(other, k) for k in range(lo, top + 1)]
        err = [self.error(k) + other.error(k) for k in range(lo, top + 1)]
        return Laurent(lo, coef, hi=hi, err=err)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.lo, [-c for c in self.coef], hi=self.hi, err=self.err)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            o = complex(other)
            return Laurent(self.lo, [c * o for c in self.coef], hi=self.hi, err=[e * abs(o) for e in self.err])
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, other.hi + self.lo)
        top = min(hi, self.lo + len(self.coef) - 1 + other.lo + len(other.coef) - 1)
        coef, err = [], []
        for k in range(lo, top + 1):
            c, e = 0j, 0.0
            for i, (ci, ei) in enumerate(zip(self.coef, self.err)):
                j = k - (self.lo + i)
                jj = j - other.lo
                if 0 <= jj < len(other.coef):
                    c += ci * other.coef[jj]
                    e += abs(ci) * other.err[jj] + ei * abs(other.coef[jj]) + ei * other.err[jj]
            coef.append(c)
            err.append(e)
        return Laurent(lo, coef, hi=hi, err=err)._trim()

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = ", ".join(f"{self.lo + i}: {c:.6g}" for i, c in enumerate(self.coef))
        return f"Laurent({{{terms}}}, valid<= {self.hi if self.hi < _EXACT else 'inf'})"


def _get(series: Laurent, k: int) -> complex:
    i = k - series.lo
    if 0 <= i < len(series.coef):
        return series.coef[i]
    return 0j


def rational_poles(sigma0: float, roots: Sequence[int], order: int = 2) -> Laurent:
    """Expansion of 1 / prod_i (s - r_i) about s = sigma0 (eps = s - sigma0)."""
    out = Laurent.constant(1.0)
    for r in roots:
        out = out * Laurent.inverse_linear(sigma0 - r, order)
    return out


def binomial_neg(sigma0: float, j: int) -> Laurent:
    """Taylor expansion of the binomial coefficient C(-s, j) about s = sigma0.

    C(-s, j) = prod_{l<j} (-s - l) / j!, a polynomial in s, so the expansion is exact.
    """
    poly = np.poly1d([1.0])
    for ell in range(j):
        poly = poly * np.poly1d([-1.0, -float(ell)])
    poly = poly / math.factorial(j)
    coefs = []
    p = poly
    for k in range(j + 1):
        coefs.append(p(sigma0) / math.factorial(k))
        p = p.deriv()
    return Laurent(0, coefs, hi=_EXACT)
