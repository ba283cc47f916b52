"""Zeta invariants of shifted sequences.

Given an unshifted sequence T0 = {lambda_n} (with multiplicities) whose zeta
function zeta(s, T0) = sum lambda_n^(-s) continues meromorphically with simple
poles, this module transports zeta(0) and zeta'(0) to

* the shifted sequence T_d = {lambda_n + d}, using the residues and finite parts of
  zeta(s, T0) at s = 1..q (q the genus) and the logarithmic Fredholm determinant
  log F(d, T0) = -sum_{j>q} (-1)^j / j d^j zeta(j, T0);
* the squared sequence L = {lambda_n^2 + d^2}, from the two complex shifts T_{+id}
  and T_{-id} plus residue corrections at the even integers.

Concrete sequences implement :class:`SpectralSequence`; the formulas here only use
its accessors.
"""
from __future__ import annotations

import abc
import math
from dataclasses import dataclass

from .result import EPS, ConvergenceError, DomainError, EvalResult, LuneZetaError

_MAX_FREDHOLM_TERMS = 400


class SpectralSequence(abc.ABC):
    """Abstract handle on an unshifted sequence T0 of spectral type.

    Subclasses provide the genus, a lower bound of the elements and the values of
    zeta(s, T0) that the shift formulas consume.  Accessors may return complex
    values when the sequence itself is complex (as for T0 +- i d).
    """

    genus: int
    lambda_min: float

    @abc.abstractmethod
    def zeta_at(self, j: int) -> EvalResult:
        """zeta(j, T0) at an integer j > genus (a point of absolute convergence)."""

    @abc.abstractmethod
    def zeta0(self) -> EvalResult:
        """zeta(0, T0)."""

    @abc.abstractmethod
    def zeta0_prime(self) -> EvalResult:
        """d/ds zeta(s, T0) at s = 0."""

    @abc.abstractmethod
    def res1_at(self, j: int) -> EvalResult:
        """Residue of zeta(s, T0) at s = j (zero when j is not a pole)."""

    @abc.abstractmethod
    def res0_at(self, j: int) -> EvalResult:
        """Finite part lim_{s->j} [zeta(s, T0) - res1 / (s - j)]."""

    def shifted(self, delta: complex) -> "SpectralSequence":
        """The sequence {lambda_n + delta}; needed by :func:`square_product_invariants`."""
        raise NotImplementedError(f"{type(self).__name__} does not support shifts")


@dataclass(frozen=True)
class ShiftedInvariants:
    """zeta(0) and zeta'(0) of a shifted (or squared-shifted) sequence."""

    zeta0: EvalResult
    zeta0_prime: EvalResult

    def real(self) -> "ShiftedInvariants":
        return ShiftedInvariants(self.zeta0.real(), self.zeta0_prime.real())


def harmonic(j: int) -> float:
    """gamma + psi(j) = 1 + 1/2 + ... + 1/(j-1)."""
    return math.fsum(1.0 / i for i in range(1, j))


def odd_harmonic(j: int) -> float:
    """1 + 1/3 + ... + 1/(2j-1)."""
    return math.fsum(1.0 / (2 * i - 1) for i in range(1, j + 1))


def _is_zero(d) -> bool:
    return d == 0


def log_fredholm(T0: SpectralSequence, d: complex, target_abs_err: float = 1e-15) -> EvalResult:
    """log F(d, T0) = -sum_{j>q} (-1)^j / j d^j zeta(j, T0).

    The series is summed until the geometric tail bound |term| r / (1 - r), with
    r = |d| / lambda_min, falls below ``target_abs_err``.  Since zeta(j+1, T0) <=
    zeta(j, T0) / lambda_min for a positive sequence, the bound is rigorous.
    """
    if _is_zero(d):
        return EvalResult(0.0, 0.0)
    ratio = abs(d) / T0.lambda_min
    if ratio >= 1.0:
        raise DomainError(f"|d| = {abs(d):g} is not below lambda_min = {T0.lambda_min:g}; the Fredholm series diverges")
    total = 0j
    err = 0.0
    scale = 0.0
    j = T0.genus + 1
    while True:
        z = T0.zeta_at(j)
        term = -((-1) ** j) / j * d**j * z.value
        total += term
        err += abs(d) ** j / j * z.abs_err
        scale += abs(term)
        tail = abs(d) ** j * abs(z.value) / j * ratio / (1.0 - ratio)
        if tail <= target_abs_err or tail <= 1e-3 * EPS * abs(total):
            err += tail
            break
        j += 1
        if j > T0.genus + _MAX_FREDHOLM_TERMS:
            raise ConvergenceError("Fredholm series did not converge")
    return EvalResult(_realify(total), err + 4 * EPS * scale)


def _realify(v):
    if isinstance(v, complex) and v.imag == 0.0:
        return v.real
    return v


def shift_invariants(T0: SpectralSequence, d: complex, fredholm_err: float = 1e-15) -> ShiftedInvariants:
    """zeta(0, T_d) and zeta'(0, T_d) for T_d = {lambda + d}.

    zeta(0, T_d)  = zeta(0, T0)  + sum_{j=1}^q (-1)^j / j Res1_j d^j
    zeta'(0, T_d) = zeta'(0, T0) + sum_{j=1}^q (-1)^j / j (Res0_j + (gamma + psi(j)) Res1_j) d^j
                    - log F(d, T0)
    """
    if not _is_zero(d) and getattr(d, "imag", 0.0) == 0.0 and d.real <= -T0.lambda_min:
        raise DomainError(f"shift {d} is not above -lambda_min = {-T0.lambda_min:g}")
    z0 = T0.zeta0()
    z1 = T0.zeta0_prime()
    if _is_zero(d):
        return ShiftedInvariants(z0, z1)
    for j in range(1, T0.genus + 1):
        c = (-1) ** j / j * d**j
        r1 = T0.res1_at(j)
        r0 = T0.res0_at(j)
        z0 = z0 + r1 * c
        z1 = z1 + (r0 + r1 * harmonic(j)) * c
    z1 = z1 - log_fredholm(T0, d, fredholm_err)
    return ShiftedInvariants(_clean(z0), _clean(z1))


def _clean(r: EvalResult) -> EvalResult:
    v = r.value
    if isinstance(v, complex) and abs(v.imag) <= r.abs_err + 1e-300:
        v = v.real
    return EvalResult(v, r.abs_err)


def square_product_invariants(T0: SpectralSequence, d: complex, genus_p: int | None = None,
                              imag_tol: float = 1e-10) -> ShiftedInvariants:
    """Invariants of L = {lambda^2 + d^2} from the shifted sequences T_{+id}, T_{-id}.

    zeta(0, L)  = [zeta(0, T_{id}) + zeta(0, T_{-id})] / 2
    zeta'(0, L) = zeta'(0, T_{id}) + zeta'(0, T_{-id})
                  - sum_{j=1}^{[p/2]} (-1)^j / j (1 + 1/3 + ... + 1/(2j-1)) Res1(zeta(s, T0), 2j) d^(2j)

    ``d`` may be real or purely imaginary; d^2 = p < 0 gives the real shifts -+ sqrt(-p).
    The imaginary parts of the assembled results must cancel, otherwise an error is raised.
    """
    p = T0.genus if genus_p is None else int(genus_p)
    d = complex(d)
    id_plus = complex(-d.imag, d.real)  # i*d without rounding
    plus = T0.shifted(_realify(id_plus))
    minus = T0.shifted(_realify(-id_plus))
    z0 = (plus.zeta0() + minus.zeta0()) * 0.5
    z1 = plus.zeta0_prime() + minus.zeta0_prime()
    d2 = d * d
    for j in range(1, p // 2 + 1):
        r1 = T0.res1_at(2 * j)
        z1 = z1 - r1 * ((-1) ** j / j * odd_harmonic(j) * d2**j)
    out = []
    for r in (z0, z1):
        v = complex(r.value)
        if abs(v.imag) > max(imag_tol, 10 * r.abs_err):
            raise LuneZetaError(f"imaginary part {v.imag:.3g} did not cancel in the squared-sequence formula")
        out.append(EvalResult(v.real, r.abs_err))
    return ShiftedInvariants(*out)


def sqrt_shift(p: float) -> complex:
    """A square root d of p (d = i sqrt(-p) for p < 0), as used by the product formula."""
    if p < 0:
        return complex(0.0, math.sqrt(-p))
    return complex(math.sqrt(p), 0.0)
