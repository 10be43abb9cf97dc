"""Tubes about curves that bend.

In a space form the tube volume about a closed curve depends only on the
curve's length and the ambient curvature, not on how the curve bends: the
acceleration enters the normal-disk integrand through a term that is odd over
the disk and integrates away.  This script watches that cancellation happen
for latitude circles on S^3 of increasing geodesic curvature, and for a
straight segment versus a circular arc in flat space.
"""

import math

from tubelab.curves import (
    arc_r3,
    general_curve_tube_volume,
    line_r3,
    small_circle_s3,
)


def main():
    r = 0.3
    print(f"latitude circles on S^3, tube radius {r}")
    print()
    print("  kappa    length       volume        pi sin^2(r) L   rel err")
    for kappa in (0.0, 0.25, 0.5, 1.0, 2.0):
        curve = small_circle_s3(kappa=kappa, count=257)
        vol, _ = general_curve_tube_volume(curve, r, degree=10)
        ref = math.pi * math.sin(r) ** 2 * curve.length
        print(f"  {kappa:4.2f}   {curve.length:9.6f}   {vol:.10f}   "
              f"{ref:.10f}   {abs(vol - ref) / ref:.1e}")

    print()
    print("flat space, open curves of unit length, tube radius 0.2")
    v_line, _ = general_curve_tube_volume(line_r3(1.0, 65), 0.2)
    v_arc, _ = general_curve_tube_volume(arc_r3(2.0, 1.0, 65), 0.2)
    print(f"  straight segment: {v_line:.12f}")
    print(f"  circular arc:     {v_arc:.12f}")
    print(f"  cylinder formula: {math.pi * 0.04:.12f}")
    print()
    print("Bending is invisible to the volume; only length and curvature of")
    print("the ambient space survive the disk integral.")


if __name__ == "__main__":
    main()
