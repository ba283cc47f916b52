"""The profile curve that generates S^2_k as a surface of revolution.

x(theta) = k sin(theta), z(theta) = E(pi/2 - theta, k), with theta the arc length.
The script writes the curve for a few k as CSV files and checks that each has
length pi/2, as an arc-length parametrisation must.

Run with ``python3 demos/profile_curve.py [output_dir]``.
"""
import math
import pathlib
import sys

from lunezeta import profile
from lunezeta.geometry import arc_length, profile_csv

out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out_dir.mkdir(parents=True, exist_ok=True)
for k in (0.25, 0.5, 0.75, 1.0):
    pts = profile(k, 2001)
    path = out_dir / f"profile_k{k:.2f}.csv"
    path.write_text(profile_csv(pts), encoding="utf-8")
    print(f"k = {k:.2f}: pole height z(0) = {pts[0].z:.10f}, "
          f"length - pi/2 = {arc_length(pts) - math.pi / 2:+.2e} -> {path}")
