"""The profile curve of the surface of revolution Y^2_k.

The generatrix is x = k sin(theta), z = E(pi/2 - theta, k), with E the incomplete
elliptic integral of the second kind and theta the arc length.  Rotating it about
the z axis gives the metric d theta^2 + k^2 sin^2(theta) d phi^2.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .quadrature import QuadratureConfig, integrate
from .result import EPS, DomainError, EvalResult

_E_CONFIG = QuadratureConfig(target_abs_err=1e-14, rel_err=1e-14, max_panels=200)


def elliptic_E(theta: float, k: float) -> EvalResult:
    """E(theta, k) = int_0^theta sqrt(1 - k^2 sin^2 psi) d psi for theta in [0, pi/2], k in [0, 1]."""
    if not 0.0 <= theta <= math.pi / 2 + 1e-15:
        raise DomainError("theta must lie in [0, pi/2]")
    if not 0.0 <= k <= 1.0:
        raise DomainError("k must lie in [0, 1]")
    if theta == 0.0:
        return EvalResult(0.0, 0.0)
    if k == 0.0:
        return EvalResult(theta, EPS * theta)
    if k == 1.0:
        # the integrand is cos psi, with a kink-free closed form
        return EvalResult(math.sin(theta), EPS)
    k2 = k * k
    return integrate(lambda psi: np.sqrt(1.0 - k2 * np.sin(psi) ** 2), 0.0, theta, _E_CONFIG)


@dataclass(frozen=True)
class ProfilePoint:
    theta: float
    x: float
    z: float


def profile(k: float, samples: int) -> List[ProfilePoint]:
    """Points of the generatrix on a uniform theta grid over [0, pi/2].

    The values E(pi/2 - theta_i, k) are obtained by integrating the arc-length
    density panel by panel on the grid and accumulating from the equator, so a
    fine profile costs one quadrature per panel rather than one per point.
    """
    if not 0.0 < k <= 1.0:
        raise DomainError("k must lie in (0, 1]")
    if samples < 2:
        raise DomainError("samples must be >= 2")
    theta = np.linspace(0.0, math.pi / 2, samples)
    psi = math.pi / 2 - theta  # decreasing from pi/2 to 0
    k2 = k * k
    # Gauss-Legendre on each panel [psi_{i+1}, psi_i] is exact to rounding for this
    # analytic integrand once the panels are short; 10 nodes handle coarse grids too.
    nodes, weights = np.polynomial.legendre.leggauss(10)
    lo, hi = psi[1:], psi[:-1]
    half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    panels = (np.sqrt(1.0 - k2 * np.sin(pts) ** 2) @ weights) * half
    # z(theta_i) = integral over [0, psi_i] = sum of panels from the end of the grid
    z = np.concatenate([np.cumsum(panels[::-1])[::-1], [0.0]])
    x = k * np.sin(theta)
    x[-1] = k
    return [ProfilePoint(float(t), float(xx), float(zz)) for t, xx, zz in zip(theta, x, z)]


def arc_length(points: List[ProfilePoint]) -> float:
    """Length of the polyline through the (x, z) points."""
    x = np.array([p.x for p in points])
    z = np.array([p.z for p in points])
    return float(np.sum(np.hypot(np.diff(x), np.diff(z))))


def profile_csv(points: List[ProfilePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "x", "z"])
    for p in points:
        w.writerow([repr(p.theta), repr(p.x), repr(p.z)])
    return buf.getvalue()
