"""Determinants of the round spheres S^2 and S^3, and how they move under deformation.

At k = 1 both spheres are round and zeta'(0) has a closed form in terms of
derivatives of the Riemann zeta function.  The script prints the pipeline value
next to that closed form, then the slope of zeta'(0) in a = 1/k at the round
point, computed from the collapsed-lattice formula and by a finite difference.

Run with ``python3 demos/round_spheres.py``.
"""
import math

from lunezeta import DeformedSphere, expansion, zeta_invariants
from lunezeta.specfun import hurwitz_zeta_sderiv

closed = {
    2: 4 * hurwitz_zeta_sderiv(-1, 1.0).value - 0.5,
    3: 2 * hurwitz_zeta_sderiv(-2, 1.0).value + 2 * hurwitz_zeta_sderiv(0, 1.0).value + math.log(2),
}

for dim in (2, 3):
    inv = zeta_invariants(DeformedSphere(dim, 1.0), route="both")
    print(f"S^{dim}: zeta(0) = {inv.zeta0.value:+.12f}")
    print(f"      zeta'(0) = {inv.zeta0_prime.value:+.12f}  (closed form {closed[dim]:+.12f})")
    print(f"      det      = {inv.det.value:.12f}")

    e = expansion(dim)
    print(f"      d zeta'(0)/da at a = 1: {e.slope_Z:.12f} (formula), {e.slope_fd:.9f} (finite difference)")
    print(f"      det(a) ~ {e.det_at_1:.9f} {e.det_slope:+.9f} (a - 1)")
    print()
