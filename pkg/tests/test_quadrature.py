import math

import numpy as np
import pytest

from tubelab.quadrature import (
    gauss_legendre,
    hyperplane_basis,
    monomial_sphere_integral,
    radial_sphere_integral,
    sphere_area,
    sphere_rule,
    unit_ball_volume,
)


def even_exponents(m, degree):
    if m == 0:
        yield ()
        return
    for a in range(0, degree + 1, 2):
        for rest in even_exponents(m - 1, degree - a):
            yield (a,) + rest


def test_sphere_area_and_ball_volume():
    assert sphere_area(2) == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert sphere_area(3) == pytest.approx(4.0 * math.pi, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)


def test_monomial_sphere_integral_basic():
    # int over S^2 of x^2 = |S^2| / 3
    assert monomial_sphere_integral((2, 0, 0)) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)
    assert monomial_sphere_integral((1, 0, 0)) == 0.0
    with pytest.raises(ValueError):
        monomial_sphere_integral((-2, 0))


def test_hyperplane_basis_orthonormal_and_orthogonal():
    for u in (np.array([0.0, 0.0, 1.0]), np.array([0.6, 0.8, 0.0]),
              np.array([0.5, -0.5, 0.5, -0.5])):
        B = hyperplane_basis(u)
        n = len(u)
        assert B.shape == (n, n - 1)
        assert np.allclose(B.T @ B, np.eye(n - 1), atol=1e-14)
        assert np.allclose(B.T @ u, 0.0, atol=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_rule_exact_on_even_monomials(n):
    u = np.eye(n)[-1]
    rule = sphere_rule(n, u, degree=12)
    flat = rule.nodes @ rule.basis
    for alphas in even_exponents(n - 1, 12):
        exact = monomial_sphere_integral(alphas)
        approx = rule.integrate(np.prod(flat ** np.array(alphas), axis=1))
        assert abs(approx - exact) <= 1e-11


def test_rule_kills_odd_monomials():
    rule = sphere_rule(4, np.eye(4)[0], degree=10)
    flat = rule.nodes @ rule.basis
    for alphas in ((1, 0, 0), (3, 2, 0), (1, 1, 1), (5, 0, 2)):
        approx = rule.integrate(np.prod(flat ** np.array(alphas), axis=1))
        assert abs(approx) <= 1e-12


def test_rule_respects_rotated_normal():
    u = np.array([0.6, 0.0, 0.8])
    rule = sphere_rule(3, u, degree=8)
    assert np.allclose(rule.nodes @ u, 0.0, atol=1e-13)
    assert np.allclose(np.linalg.norm(rule.nodes, axis=1), 1.0, atol=1e-13)
    assert rule.integrate(np.ones(len(rule.nodes))) == pytest.approx(
        2.0 * math.pi, rel=1e-13
    )


def test_rule_guards():
    with pytest.raises(ValueError):
        sphere_rule(2, np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        sphere_rule(17, np.eye(17)[0])
    with pytest.raises(ValueError):
        sphere_rule(4, np.eye(4)[0], degree=44)
    with pytest.raises(ValueError):
        sphere_rule(4, 2.0 * np.eye(4)[0])


def test_rule_csv_round_trip(tmp_path):
    rule = sphere_rule(3, np.eye(3)[-1], degree=6)
    path = tmp_path / "rule.csv"
    rule.to_csv(path)
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert np.allclose(data[:, :3], rule.nodes, atol=0)
    assert np.allclose(data[:, 3], rule.weights, atol=0)


def test_gauss_legendre_interval():
    x, w = gauss_legendre(16, 0.0, 2.0)
    assert np.sum(w * x ** 3) == pytest.approx(4.0, rel=1e-14)


def test_radial_sphere_integral_flat_ball():
    # volume of the unit ball in the hyperplane: integrate rho^(n-2)
    n = 4
    rule = sphere_rule(n, np.eye(n)[0], degree=6)
    value, err = radial_sphere_integral(
        lambda rho, W: np.full(len(W), rho ** (n - 2)), 1.0, rule
    )
    assert value == pytest.approx(unit_ball_volume(n - 1), rel=1e-13)
    assert err <= 1e-13
