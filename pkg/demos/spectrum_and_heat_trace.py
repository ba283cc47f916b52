"""From the explicit spectrum to the zeta function.

The Laplacian on S^{N+1}_k has eigenvalues (a|m| + nu)(a|m| + nu + N) with a = 1/k.
For a lune angle pi/3 (a = 3) we list the first eigenvalues, check the small-t
behaviour of the heat trace against the leading Weyl term k/t, and compare a
brute-force sum of lambda^(-3) with the value obtained through the decomposition
into simple and double zeta functions.

Run with ``python3 demos/spectrum_and_heat_trace.py``.
"""
from fractions import Fraction

from lunezeta import DeformedSphere, enumerate_spectrum, heat_trace_partial
from lunezeta.oracle import brute_zeta
from lunezeta.spheres import spectral_zeta

sphere = DeformedSphere.from_a(2, Fraction(3))
print("first eigenvalues of S^2 with k = 1/3:")
for e in enumerate_spectrum(sphere, 8):
    print(f"  lambda = {e.eigenvalue:8.3f}   multiplicity {e.multiplicity}")

print("\nheat trace against the Weyl term k/t:")
for t in (1e-1, 1e-2, 1e-3):
    h = heat_trace_partial(sphere, t, 2000)
    print(f"  t = {t:g}: trace = {h.value:12.4f}, k/t = {float(sphere.k) / t:12.4f}")

brute = brute_zeta(sphere, 3.0)
series = spectral_zeta(sphere, 3.0)
print(f"\nzeta(3): lattice sum {brute.value:.15f} +- {brute.abs_err:.1e}")
print(f"         decomposition {series.value:.15f} +- {series.abs_err:.1e}")
