import math

import numpy as np
import pytest

from tubelab.damek_ricci import (
    DamekRicciSpace,
    GroupPoint,
    HeisenbergAlgebra,
    build_heisenberg,
    euler_arnold_residual,
    tube_surface_area,
    tube_volume_closed_form,
)
from tubelab.lie import jacobi_identity_residual
from tubelab.quadrature import unit_ball_volume
from tubelab.util import weyl_samples


@pytest.mark.parametrize("pq", [(2, 1), (4, 1), (6, 1), (8, 1), (4, 3), (8, 3), (8, 7)])
def test_builtin_algebras_satisfy_axioms(pq):
    alg = build_heisenberg(*pq)
    assert alg.axiom_residual() <= 1e-12


def test_inadmissible_pairs_rejected():
    for p, q in ((3, 1), (2, 3), (4, 7), (5, 3), (2, 2)):
        with pytest.raises(ValueError):
            build_heisenberg(p, q)


def test_user_supplied_J_validated():
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    alg = build_heisenberg(2, 1, J=rot[None])
    assert alg.axiom_residual() == 0.0
    with pytest.raises(ValueError):
        build_heisenberg(2, 1, J=np.eye(2)[None])  # not skew


def test_bracket_lands_in_center_component():
    alg = build_heisenberg(4, 3)
    V1, V2 = np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0, 0.0])
    z = alg.bracket_v(V1, V2)
    assert z.shape == (3,)
    # <J_i V1, V2> with antisymmetry
    assert np.allclose(alg.bracket_v(V2, V1), -z)


def test_solvable_structure_constants_satisfy_jacobi():
    for pq in ((2, 1), (4, 3), (8, 7)):
        space = DamekRicciSpace(build_heisenberg(*pq))
        L = space.lie_algebra_data()
        assert jacobi_identity_residual(L) <= 1e-12
        # [A, V] = V/2 and [A, Z] = Z on basis vectors
        n, p = space.dim, space.p
        A = np.eye(n)[-1]
        for a in range(p):
            assert np.allclose(L.bracket(A, np.eye(n)[a]), 0.5 * np.eye(n)[a])
        for i in range(p, n - 1):
            assert np.allclose(L.bracket(A, np.eye(n)[i]), np.eye(n)[i])


def test_group_unit_and_inverse():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    one = sp.identity()
    a = sp.point([0.3, -0.2, 0.5, 0.7])
    assert np.allclose(sp.multiply(a, one).coords(), a.coords())
    assert np.allclose(sp.multiply(one, a).coords(), a.coords())
    assert np.max(np.abs(sp.multiply(a, sp.inverse(a)).coords())) <= 1e-15
    assert np.max(np.abs(sp.multiply(sp.inverse(a), a).coords())) <= 1e-15


def test_group_associativity_deterministic_triples():
    sp = DamekRicciSpace(build_heisenberg(4, 3))
    samples = weyl_samples(300, sp.dim)
    worst = 0.0
    for i in range(100):
        a, b, c = (sp.point(samples[3 * i + j]) for j in range(3))
        lhs = sp.multiply(sp.multiply(a, b), c).coords()
        rhs = sp.multiply(a, sp.multiply(b, c)).coords()
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    assert worst <= 1e-12


def test_v_doubling():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    a = GroupPoint(np.array([0.4, -0.1]), np.zeros(1), 0.0)
    out = sp.multiply(a, a)
    assert np.allclose(out.V, 2.0 * a.V)
    assert np.allclose(out.Z, 0.0)
    assert out.t == 0.0


def test_metric_at_identity_is_euclidean():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    one = sp.identity()
    X = (np.array([1.0, 2.0]), np.array([3.0]), 4.0)
    Y = (np.array([0.5, -1.0]), np.array([2.0]), 1.0)
    expected = 0.5 - 2.0 + 6.0 + 4.0
    assert sp.metric_at(one, X, Y) == pytest.approx(expected, rel=1e-15)


def test_volume_density_determinant():
    for pq in ((2, 1), (4, 3)):
        sp = DamekRicciSpace(build_heisenberg(*pq))
        x = sp.point(weyl_samples(1, sp.dim)[0])
        det = np.linalg.det(sp.metric_gram(x))
        assert det == pytest.approx(math.exp(-(sp.p + 2 * sp.q) * x.t), rel=1e-12)


def test_geodesic_start_and_zero_center():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    V = np.array([1.0, 0.0])
    Z = np.zeros(1)
    assert np.allclose(sp.geodesic_from_identity(V, Z, 0.0).coords(), 0.0)
    t = 1.3
    g = sp.geodesic_from_identity(V, Z, t)
    theta = math.tanh(t / 2.0)
    assert np.allclose(g.V, 2.0 * theta * V)
    assert np.allclose(g.Z, 0.0)
    assert g.t == pytest.approx(math.log(1.0 - theta * theta), rel=1e-14)


@pytest.mark.parametrize("pq", [(2, 1), (4, 3)])
def test_geodesic_unit_speed(pq):
    sp = DamekRicciSpace(build_heisenberg(*pq))
    V = np.arange(1.0, sp.p + 1.0)
    Z = np.arange(1.0, sp.q + 1.0)
    norm = math.sqrt(float(V @ V + Z @ Z))
    V, Z = V / norm, Z / norm
    h = 1e-4
    for t in np.linspace(0.05, 2.0, 20):
        fwd = sp.geodesic_from_identity(V, Z, t + h).coords()
        bwd = sp.geodesic_from_identity(V, Z, t - h).coords()
        vel = (fwd - bwd) / (2.0 * h)
        x = sp.geodesic_from_identity(V, Z, t)
        X = (vel[: sp.p], vel[sp.p : sp.p + sp.q], float(vel[-1]))
        speed = math.sqrt(sp.metric_at(x, X, X))
        assert abs(speed - 1.0) <= 1e-8


@pytest.mark.parametrize("pq", [(2, 1), (4, 3)])
def test_euler_arnold_residual_generic(pq):
    sp = DamekRicciSpace(build_heisenberg(*pq))
    V = np.arange(1.0, sp.p + 1.0)
    Z = np.arange(1.0, sp.q + 1.0)
    norm = math.sqrt(float(V @ V + Z @ Z))
    res = euler_arnold_residual(sp, V / norm, Z / norm, np.linspace(0.1, 2.0, 8))
    assert res <= 1e-7


def test_euler_arnold_pure_axis_orbit():
    # the one-parameter subgroup (0, 0, t) has constant body velocity A and
    # ad(A)^T A = 0, so the residual is pure rounding
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    L = sp.lie_algebra_data()
    h = 1e-4

    def gamma(t):
        return GroupPoint(np.zeros(2), np.zeros(1), t)

    def body_velocity(t):
        ginv = sp.inverse(gamma(t))
        fwd = sp.multiply(ginv, gamma(t + h)).coords()
        bwd = sp.multiply(ginv, gamma(t - h)).coords()
        return (fwd - bwd) / (2.0 * h)

    for t in (0.0, 0.5, 1.5):
        xi = body_velocity(t)
        xi_dot = (body_velocity(t + h) - body_velocity(t - h)) / (2.0 * h)
        rhs = L.ad(xi).T @ xi
        assert np.max(np.abs(xi_dot - rhs)) <= 1e-12


def test_cross_section_axis_norms():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    r = 0.9
    pt = sp.cross_section_point(np.array([1.0, 0.0]), np.zeros(1), r)
    assert np.linalg.norm(pt[:2]) == pytest.approx(2.0 * math.sinh(r / 2.0), rel=1e-13)
    assert np.allclose(pt[2:], 0.0)
    pt = sp.cross_section_point(np.zeros(2), np.array([1.0]), r)
    assert np.allclose(pt[:2], 0.0)
    assert abs(pt[2]) == pytest.approx(math.sinh(r), rel=1e-13)


def test_cross_section_ellipsoid_membership():
    sp = DamekRicciSpace(build_heisenberg(4, 3))
    r = 0.8
    a2 = (2.0 * math.sinh(r / 2.0)) ** 2
    b2 = a2 * math.cosh(r / 2.0) ** 2
    for row in weyl_samples(200, sp.p + sp.q):
        vz = row / np.linalg.norm(row)
        pt = sp.cross_section_point(vz[: sp.p], vz[sp.p :], r)
        val = float(pt[: sp.p] @ pt[: sp.p]) / a2 + float(pt[sp.p :] @ pt[sp.p :]) / b2
        assert abs(val - 1.0) <= 1e-12


def test_closed_form_small_radius_limit():
    p, q, l = 2, 1, 1.0
    for r, tol in ((1e-3, 1e-6), (1e-4, 1e-8)):
        vol = tube_volume_closed_form(p, q, r, l)
        flat = unit_ball_volume(p + q) * r ** (p + q) * l
        assert vol / flat == pytest.approx(1.0, abs=tol)


def test_surface_area_is_volume_derivative():
    r, h = 0.7, 1e-3
    for p, q in ((2, 1), (4, 3), (8, 7)):
        def dv(step):
            return (
                tube_volume_closed_form(p, q, r + step, 1.0)
                - tube_volume_closed_form(p, q, r - step, 1.0)
            ) / (2.0 * step)

        deriv = (4.0 * dv(h / 2.0) - dv(h)) / 3.0
        area = tube_surface_area(p, q, r, 1.0)
        assert abs(deriv - area) / area <= 1e-8


def test_closed_form_explicit_value():
    val = tube_volume_closed_form(2, 1, 0.5, 1.0)
    ref = unit_ball_volume(3) * 8.0 * math.sinh(0.25) ** 3 * math.cosh(0.25)
    assert val == pytest.approx(ref, rel=1e-15)


def test_metric_left_invariance_exact_differential():
    sp = DamekRicciSpace(build_heisenberg(2, 1))
    pts = weyl_samples(20, sp.dim, -0.5, 0.5)
    tans = weyl_samples(20, sp.dim)

    def split(v):
        return (v[: sp.p], v[sp.p : sp.p + sp.q], float(v[-1]))

    def translate(g, X):
        V1, Z1, t1 = X
        half = math.exp(g.t / 2.0)
        return (
            half * V1,
            math.exp(g.t) * Z1 + 0.5 * half * sp.algebra.bracket_v(g.V, V1),
            t1,
        )

    for i in range(10):
        g, x = sp.point(pts[2 * i]), sp.point(pts[2 * i + 1])
        X, Y = split(tans[2 * i]), split(tans[2 * i + 1])
        gx = sp.multiply(g, x)
        lhs = sp.metric_at(gx, translate(g, X), translate(g, Y))
        rhs = sp.metric_at(x, X, Y)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
