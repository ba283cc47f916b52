"""Zeta-regularized determinants of the Laplacian on deformed spheres S^{N+1}_k.

The main entry points are :class:`DeformedSphere`, :func:`zeta_invariants` and
:func:`expansion`; the simple and double zeta classes that carry the spectrum
are exposed for direct use as well.
"""

__version__ = "0.1.0"

from .result import (  # noqa: E402
    ConvergenceError,
    DomainError,
    EvalResult,
    LuneZetaError,
    PoleError,
    RouteDisagreementError,
    compensated,
)
from .quadrature import QuadratureConfig, plana_integral  # noqa: E402
from .simple_zeta import SimpleZetaParams, z_invariants  # noqa: E402
from .double_zeta import DoubleZetaParams, Z_invariants, chi  # noqa: E402
from .spheres import (  # noqa: E402
    DeformedSphere,
    ExpansionCoefficients,
    SpectrumEntry,
    ZetaInvariants,
    decompose,
    enumerate_spectrum,
    expansion,
    heat_trace_partial,
    zeta_invariants,
)
from .geometry import ProfilePoint, elliptic_E, profile  # noqa: E402

__all__ = [
    "ConvergenceError", "DomainError", "EvalResult", "LuneZetaError", "PoleError", "RouteDisagreementError",
    "compensated", "QuadratureConfig", "plana_integral", "SimpleZetaParams", "z_invariants",
    "DoubleZetaParams", "Z_invariants", "chi", "DeformedSphere", "ExpansionCoefficients", "SpectrumEntry",
    "ZetaInvariants", "decompose", "enumerate_spectrum", "expansion", "heat_trace_partial", "zeta_invariants",
    "ProfilePoint", "elliptic_E", "profile",
]
