"""Value/error pairs and the small exception hierarchy shared by all modules."""
from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

import numpy as np

EPS = np.finfo(float).eps


class LuneZetaError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(LuneZetaError, ValueError):
    """Argument sits on a pole of the function being evaluated."""


class DomainError(LuneZetaError, ValueError):
    """Argument outside the domain where the implementation is valid."""


class ConvergenceError(LuneZetaError, RuntimeError):
    """An iterative or adaptive procedure ran out of budget."""


class RouteDisagreementError(LuneZetaError, RuntimeError):
    """Two independent evaluation routes disagree beyond their error bars."""


@dataclass(frozen=True)
class EvalResult:
    """A number together with an absolute error estimate.

    ``value`` may be real, complex or a numpy array.
    """

    value: Any
    abs_err: float = 0.0

    def __post_init__(self):
        if not (self.abs_err >= 0.0):
            raise ValueError(f"abs_err must be non-negative, got {self.abs_err!r}")
        object.__setattr__(self, "abs_err", float(self.abs_err))

    def __float__(self) -> float:
        return float(np.real(self.value))

    def __complex__(self) -> complex:
        return complex(self.value)

    def __add__(self, other):
        if isinstance(other, EvalResult):
            return EvalResult(self.value + other.value, self.abs_err + other.abs_err)
        return EvalResult(self.value + other, self.abs_err)

    __radd__ = __add__

    def __neg__(self):
        return EvalResult(-self.value, self.abs_err)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, EvalResult):
            err = abs(self.value) * other.abs_err + abs(other.value) * self.abs_err
            return EvalResult(self.value * other.value, float(err + self.abs_err * other.abs_err))
        return EvalResult(self.value * other, float(abs(other) * self.abs_err))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EvalResult):
            raise TypeError("division by an EvalResult is not supported")
        return EvalResult(self.value / other, float(self.abs_err / abs(other)))

    def real(self) -> "EvalResult":
        return EvalResult(np.real(self.value), self.abs_err)

    def within(self, target: float, tol: float) -> bool:
        return abs(self.value - target) <= tol


def total(parts: Iterable[EvalResult]) -> EvalResult:
    """Sum of results with errors added and a rounding allowance."""
    parts = list(parts)
    out = EvalResult(0.0, 0.0)
    scale = 0.0
    for p in parts:
        out = out + p
        scale += abs(p.value)
    return EvalResult(out.value, out.abs_err + 4 * EPS * float(scale))


# Compensated summation switch. A context variable keeps the setting local to the
# calling thread/task so concurrent callers do not interfere.
_COMPENSATED: contextvars.ContextVar[bool] = contextvars.ContextVar("compensated", default=False)


def compensated_enabled() -> bool:
    return _COMPENSATED.get()


@contextlib.contextmanager
def compensated(enabled: bool = True) -> Iterator[None]:
    """Use error-free (``math.fsum``) accumulation for direct sums inside the block."""
    token = _COMPENSATED.set(enabled)
    try:
        yield
    finally:
        _COMPENSATED.reset(token)


def accumulate(terms: np.ndarray, axis: int = -1) -> np.ndarray:
    """Sum ``terms`` along ``axis``; exact-rounding when compensated mode is on."""
    if not _COMPENSATED.get():
        return np.sum(terms, axis=axis)
    terms = np.moveaxis(np.asarray(terms), axis, -1)
    flat = terms.reshape(-1, terms.shape[-1])
    if np.iscomplexobj(flat):
        out = np.array([complex(math.fsum(r.real), math.fsum(r.imag)) for r in flat])
    else:
        out = np.array([math.fsum(r) for r in flat])
    return out.reshape(terms.shape[:-1])
