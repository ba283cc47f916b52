"""Adaptive Gauss-Kronrod quadrature, specialised to Abel-Plana integrals.

The integrals met in the continuation formulas all have the form

    int_0^inf f(y) / (exp(2 pi y) - 1) dy,        f(y) = O(y) at y = 0,

where ``f`` is a difference i[g(iy) - g(-iy)] of an analytic function along the
imaginary axis.  The weight decays like exp(-2 pi y), so the ray is cut at a
finite ``Y`` and the remaining piece is bounded from a sample of |f| near ``Y``.

Integrands are evaluated on all Kronrod nodes of all active panels in a single
vectorised call; an integrand may return an array with leading "component" axes
(for example a value and its s-derivative), in which case every component is
integrated and the adaptivity is driven by the worst component.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .result import EPS, ConvergenceError, DomainError, EvalResult

# 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights, with the
# embedded 7-point Gauss weights on the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS = np.zeros(15)
GAUSS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])

MAX_CUTOFF = 12.0
_ORIGIN_OFFSET = 1e-12


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy and budget of :func:`plana_integral` and :func:`integrate`.

    ``cutoff_Y`` of ``None`` means "derive from the integrand size", capped at 12.
    ``rel_err`` adds a relative allowance to ``target_abs_err``.
    """

    target_abs_err: float = 1e-14
    max_panels: int = 400
    cutoff_Y: Optional[float] = None
    rel_err: float = 1e-13

    def __post_init__(self):
        if not self.target_abs_err > 0:
            raise ValueError("target_abs_err must be positive")
        if self.cutoff_Y is not None and not self.cutoff_Y > 0:
            raise ValueError("cutoff_Y must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be at least 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class PlanaIntegrand:
    """Integrand ``f`` of a Plana integral.

    ``f`` maps a 1-d array of y >= 0 to an array whose last axis matches y; leading
    axes (if any) are independent components.  ``vanishes_at_zero`` is the O(y)
    regularity tag; it is verified numerically before integration.
    """

    f: Callable[[np.ndarray], np.ndarray]
    vanishes_at_zero: bool = True
    name: str = field(default="f", compare=False)

    def __call__(self, y):
        return np.asarray(self.f(np.asarray(y, dtype=float)))


def plana_weight(y):
    """1 / (exp(2 pi y) - 1) evaluated without cancellation near the origin."""
    return 1.0 / np.expm1(2.0 * np.pi * np.asarray(y, dtype=float))


def _panel_rule(func, a, b):
    """Kronrod estimate and |K - G| for each panel; a, b are 1-d arrays."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    y = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    vals = np.asarray(func(y))
    comp_shape = vals.shape[:-1]
    vals = vals.reshape(comp_shape + (a.size, 15))
    kron = np.tensordot(vals, KRONROD, axes=([-1], [0])) * half
    gauss = np.tensordot(vals, GAUSS, axes=([-1], [0])) * half
    err = np.abs(kron - gauss)
    # The raw |K - G| difference is used as is (it overestimates the Kronrod error
    # for smooth integrands), floored at the rounding level of the panel.
    scale = np.abs(vals).max(axis=-1) * np.abs(half)
    err = np.maximum(err, 50.0 * EPS * scale)
    return kron, err


def integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              cfg: QuadratureConfig = DEFAULT_CONFIG, breakpoints=None) -> EvalResult:
    """Adaptive GK15 integral of a vectorised ``func`` over [a, b].

    Returns an :class:`EvalResult` whose value has the component shape of ``func``.
    Raises :class:`ConvergenceError` if ``cfg.max_panels`` panels do not reach the
    requested accuracy.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("integrate needs a finite interval")
    edges = np.array(sorted({float(a), float(b), *(float(p) for p in (breakpoints or []) if a < p < b)}))
    lo, hi = edges[:-1], edges[1:]
    kron, err = _panel_rule(func, lo, hi)
    while True:
        total = kron.sum(axis=-1)
        err_comp = err.sum(axis=-1)
        tol = np.maximum(cfg.target_abs_err, cfg.rel_err * np.abs(total))
        if np.all(err_comp <= tol):
            break
        if lo.size >= cfg.max_panels:
            raise ConvergenceError(
                f"quadrature did not reach {cfg.target_abs_err:g} within {cfg.max_panels} panels "
                f"(estimate {float(np.max(err_comp)):.3g})"
            )
        # Bisect the panels carrying the largest error, relative to each component's
        # tolerance, a handful at a time so every sweep is one vectorised call.
        badness = (err / tol[..., None]).reshape(-1, lo.size).max(axis=0)
        n_split = max(1, min(lo.size // 4 + 1, cfg.max_panels - lo.size))
        split = np.argsort(badness)[::-1][:n_split]
        keep = np.setdiff1d(np.arange(lo.size), split)
        mids = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mids])
        new_hi = np.concatenate([mids, hi[split]])
        k_new, e_new = _panel_rule(func, new_lo, new_hi)
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        kron = np.concatenate([kron[..., keep], k_new], axis=-1)
        err = np.concatenate([err[..., keep], e_new], axis=-1)
    total = kron.sum(axis=-1)
    abs_err = float(np.max(err.sum(axis=-1))) + 4 * EPS * float(np.max(np.abs(total)) if np.size(total) else 0.0)
    if np.ndim(total) == 0:
        total = total.item()
    return EvalResult(total, abs_err)


def _probe(integrand: PlanaIntegrand, y):
    v = np.abs(integrand(np.asarray(y, dtype=float)))
    return v.reshape(-1, np.size(y)).max(axis=0)


def default_cutoff(integrand: PlanaIntegrand, target_abs_err: float) -> float:
    """Solve sup|f| exp(-2 pi Y) = 0.01 target for Y, capped at :data:`MAX_CUTOFF`."""
    grid = np.array([0.5, 1.0, 2.0, 4.0, 8.0, MAX_CUTOFF])
    sup = float(np.max(_probe(integrand, grid)))
    if sup == 0.0:
        return 1.0
    y = math.log(sup / (0.01 * target_abs_err)) / (2.0 * math.pi)
    return float(min(MAX_CUTOFF, max(1.0, y)))


def check_regularity(integrand: PlanaIntegrand) -> None:
    """Numerical check of the O(y) tag: |f(1e-8)| <= 1e-6 sup|f| on [0, 2]."""
    if not integrand.vanishes_at_zero:
        return
    near = float(np.max(_probe(integrand, np.array([1e-8]))))
    sup = float(np.max(_probe(integrand, np.linspace(0.05, 2.0, 12))))
    if near > 1e-6 * max(sup, 1e-300):
        raise DomainError(f"integrand {integrand.name} does not vanish at y = 0 (|f(1e-8)| = {near:.3g})")


def plana_integral(integrand, cfg: QuadratureConfig = DEFAULT_CONFIG, check: bool = True) -> EvalResult:
    """int_0^inf f(y) / (exp(2 pi y) - 1) dy for an O(y) integrand.

    ``integrand`` is a :class:`PlanaIntegrand` or a plain vectorised callable.
    The result may be real, complex, or an array of components; ``abs_err`` is the
    quadrature estimate plus a bound on the piece beyond the cutoff.
    """
    if not isinstance(integrand, PlanaIntegrand):
        integrand = PlanaIntegrand(integrand)
    if check:
        check_regularity(integrand)
    Y = cfg.cutoff_Y if cfg.cutoff_Y is not None else default_cutoff(integrand, cfg.target_abs_err)

    def weighted(y):
        y = np.maximum(y, _ORIGIN_OFFSET)
        return integrand(y) * plana_weight(y)

    breaks = [b for b in (0.25, 1.0, 2.5, 5.0) if b < Y]
    res = integrate(weighted, 0.0, Y, cfg, breakpoints=breaks)
    # Tail beyond Y: |f| grows at most polynomially, so bound it by its value at Y
    # and 2Y times the weight's integral, exp(-2 pi Y) / (2 pi).
    edge = float(np.max(_probe(integrand, np.array([Y, 2.0 * Y]))))
    tail = 2.0 * edge * math.exp(-2.0 * math.pi * Y) / (2.0 * math.pi)
    return EvalResult(res.value, res.abs_err + tail)


def plana_moment(k: int) -> float:
    """Closed form of int_0^inf y^(2k-1) / (exp(2 pi y) - 1) dy = |B_2k| / (4k)."""
    from .specfun import bernoulli_numbers

    b = bernoulli_numbers(2 * k)[2 * k]
    return float(abs(b)) / (4.0 * k)
