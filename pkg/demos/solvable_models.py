"""A tour of the rank-one solvable group models.

Builds the generalized Heisenberg algebras for several admissible (p, q)
pairs, extends each to the solvable group with the one-dimensional dilation
axis, and exercises the geometry: group law sanity, exact geodesics through
the identity, the first-order geodesic equation in body coordinates, and the
ellipsoidal shape of the tube cross-section.
"""

import math

import numpy as np

from tubelab.damek_ricci import (
    DamekRicciSpace,
    build_heisenberg,
    euler_arnold_residual,
    tube_surface_area,
    tube_volume_closed_form,
)
from tubelab.lie import jacobi_identity_residual
from tubelab.util import weyl_samples


def main():
    for p, q in ((2, 1), (4, 3), (8, 7)):
        sp = DamekRicciSpace(build_heisenberg(p, q))
        print(f"(p, q) = ({p}, {q})   dim = {sp.dim}")
        print(f"  algebra axiom residual   {sp.algebra.axiom_residual():.1e}")
        print(f"  Jacobi identity residual {jacobi_identity_residual(sp.lie_algebra_data()):.1e}")

        # associativity on a deterministic triple
        a, b, c = (sp.point(row) for row in weyl_samples(3, sp.dim))
        lhs = sp.multiply(sp.multiply(a, b), c).coords()
        rhs = sp.multiply(a, sp.multiply(b, c)).coords()
        print(f"  associativity residual   {np.max(np.abs(lhs - rhs)):.1e}")

        # body-coordinate geodesic equation along a mixed-direction geodesic
        V = np.zeros(p)
        V[0] = 1.0 / math.sqrt(2.0)
        Z = np.zeros(q)
        Z[0] = 1.0 / math.sqrt(2.0)
        res = euler_arnold_residual(sp, V, Z, np.linspace(0.1, 1.5, 6))
        print(f"  geodesic-equation residual {res:.1e}")

        r = 0.8
        vol = tube_volume_closed_form(p, q, r, 1.0)
        area = tube_surface_area(p, q, r, 1.0)
        print(f"  V(0.8) = {vol:.10f}   A(0.8) = {area:.10f}")
        print()

    # the cross-section of the tube, pushed to horizontal coordinates, is an
    # ellipsoid: V-axes 2 sinh(r/2), Z-axes 2 sinh(r/2) cosh(r/2)
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    r = 0.8
    a = 2.0 * math.sinh(r / 2.0)
    b = a * math.cosh(r / 2.0)
    print(f"cross-section semi-axes at r = {r}: V {a:.6f}, Z {b:.6f}")
    worst = 0.0
    for row in weyl_samples(50, 3):
        vz = row / np.linalg.norm(row)
        pt = sp.cross_section_point(vz[:2], vz[2:], r)
        val = float(pt[:2] @ pt[:2]) / a**2 + float(pt[2:] @ pt[2:]) / b**2
        worst = max(worst, abs(val - 1.0))
    print(f"max ellipsoid membership residual over 50 directions: {worst:.1e}")


if __name__ == "__main__":
    main()
