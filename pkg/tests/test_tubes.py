import json
import math

import numpy as np
import pytest

from tubelab import catalog
from tubelab.quadrature import sphere_area, sphere_rule
from tubelab.series import PoleGuardError
from tubelab.tubes import (
    geodesic_tube_integrand,
    geodesic_tube_volume,
    k_integral_coefficient,
    trig_poly_top_component,
    tube_directions,
    tube_property_scan,
)
from tubelab.damek_ricci import tube_volume_closed_form


def omega(n):
    """Unit-ball volume in R^n, as the tube normal-disk constant."""
    return sphere_area(n) / n


def test_integrand_euclidean():
    R = catalog.euclidean(4)
    e, u = np.eye(4)[0], np.eye(4)[1]
    for rho in (0.1, 0.7):
        assert geodesic_tube_integrand(R, e, u, rho) == pytest.approx(rho ** 2, rel=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_integrand_sphere(n):
    R = catalog.sphere(n)
    e, u = np.eye(n)[0], np.eye(n)[1]
    for rho in (0.2, 0.9):
        ref = math.sin(rho) ** (n - 2) * math.cos(rho)
        assert geodesic_tube_integrand(R, e, u, rho) == pytest.approx(ref, rel=1e-13)


def test_integrand_hyperbolic():
    R = catalog.hyperbolic(4)
    e, u = np.eye(4)[0], np.eye(4)[2]
    rho = 0.8
    ref = math.sinh(rho) ** 2 * math.cosh(rho)
    assert geodesic_tube_integrand(R, e, u, rho) == pytest.approx(ref, rel=1e-13)


def test_integrand_series_matches_spectral():
    for name in ("s4", "h4", "cp2", "ch2"):
        R = catalog.get_space(name)
        e, u = np.eye(R.dim)[0], np.eye(R.dim)[1]
        for rho in (0.1, 0.5):
            spectral = geodesic_tube_integrand(R, e, u, rho, method="spectral")
            series = geodesic_tube_integrand(R, e, u, rho, method="series")
            assert series == pytest.approx(spectral, rel=1e-10)


def test_integrand_guards():
    R = catalog.sphere(3)
    with pytest.raises(ValueError):
        geodesic_tube_integrand(R, np.eye(3)[0], np.eye(3)[0], 0.3)
    with pytest.raises(PoleGuardError):
        geodesic_tube_integrand(R, np.eye(3)[0], np.eye(3)[1], 3.2)
    with pytest.raises(ValueError):
        geodesic_tube_integrand(R, np.eye(3)[0], np.eye(3)[1], 0.3, method="nope")


def test_volume_euclidean_closed_form():
    R = catalog.euclidean(3)
    vol, err = geodesic_tube_volume(R, np.eye(3)[0], 0.5, 2.0)
    assert vol == pytest.approx(math.pi * 0.25 * 2.0, rel=1e-12)
    assert err <= 1e-12


@pytest.mark.parametrize("n", [3, 4, 7])
@pytest.mark.parametrize("tag", ["s", "h"])
def test_volume_space_form_oracles(n, tag):
    R = catalog.get_space(f"{tag}{n}")
    radial = math.sin if tag == "s" else math.sinh
    for r in (0.5, 1.0):
        vol, _ = geodesic_tube_volume(R, np.eye(n)[0], r, 1.0, degree=6)
        ref = omega(n - 1) * radial(r) ** (n - 1)
        assert abs(vol - ref) / ref <= 1e-8


def test_volume_ch2_cross_module():
    R = catalog.ch2()
    for r in (0.25, 0.5, 0.75):
        vol, _ = geodesic_tube_volume(R, np.eye(4)[0], r, 1.0, degree=16)
        ref = tube_volume_closed_form(2, 1, r, 1.0)
        assert abs(vol - ref) / ref <= 1e-6


def test_volume_input_validation():
    R = catalog.sphere(3)
    with pytest.raises(ValueError):
        geodesic_tube_volume(R, 2.0 * np.eye(3)[0], 0.5)
    with pytest.raises(ValueError):
        geodesic_tube_volume(R, np.eye(3)[0], -0.5)


def test_tube_directions_structure():
    dirs = tube_directions(4)
    assert len(dirs) == 14
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)


def test_scan_isotropic_vs_product():
    rep = tube_property_scan(catalog.sphere(4), 0.5, degree=12)
    assert rep.spread <= 1e-8
    rep = tube_property_scan(catalog.get_space("s2xs2"), 0.5, degree=20)
    # the real direction dependence of the product at this radius
    assert 4e-6 <= rep.spread <= 7e-6


def test_scan_report_serialization(tmp_path):
    rep = tube_property_scan(catalog.sphere(3), 0.4, degree=8)
    payload = json.loads(rep.to_json())
    assert payload["radius"] == 0.4
    assert len(payload["values"]) == len(rep.values)
    path = tmp_path / "scan.csv"
    rep.to_csv(path)
    lines = path.read_text().strip().splitlines()
    assert len(lines) == len(rep.values) + 1
    assert lines[0].startswith("index,e0")


def angular_density(R, e, rho, rule, lams=None, ecoef2=None):
    """Normal-sphere integral of integrand / rho^(n-2)."""
    vals = [
        geodesic_tube_integrand(R, e, u, rho) / rho ** (R.dim - 2) for u in rule.nodes
    ]
    return rule.integrate(np.array(vals))


def fit_even_taylor(R, e, rule, kmax, rho_max=0.3, npts=12):
    """Least-squares even-polynomial fit of the angular density in rho^2."""
    rhos = np.linspace(rho_max / npts, rho_max, npts)
    f = np.array([angular_density(R, e, rho, rule) for rho in rhos])
    V = np.vander(rhos ** 2, kmax + 3, increasing=True)
    coef, *_ = np.linalg.lstsq(V, f, rcond=None)
    return coef[: kmax + 1]


def test_k_integral_euclidean_zero():
    R = catalog.euclidean(4)
    e = np.eye(4)[0]
    for k in (1, 2, 3):
        assert abs(k_integral_coefficient(R, e, k)) <= 1e-14


def test_k_integral_matches_taylor_fit():
    for name in ("s3", "cp2"):
        R = catalog.get_space(name)
        e = np.eye(R.dim)[0]
        rule = sphere_rule(R.dim, e, degree=12)
        fitted = fit_even_taylor(R, e, rule, kmax=4)
        for k in range(0, 5):
            direct = k_integral_coefficient(R, e, k, rule=rule)
            assert abs(direct - fitted[k]) <= 1e-6 * max(1.0, abs(direct))


def test_k_integral_zeroth_is_sphere_area():
    R = catalog.sphere(5)
    e = np.eye(5)[0]
    assert k_integral_coefficient(R, e, 0) == pytest.approx(sphere_area(4), rel=1e-13)


def test_k_integral_product_direction_split():
    R = catalog.get_space("s2xs2")
    e_factor = np.eye(4)[0]
    e_diag = np.array([1.0, 0.0, 1.0, 0.0]) / math.sqrt(2.0)
    c_f = k_integral_coefficient(R, e_factor, 2, degree=16)
    c_d = k_integral_coefficient(R, e_diag, 2, degree=16)
    assert abs(c_f - c_d) >= 1e-4
    # first coefficient is direction-independent (Einstein space)
    c1_f = k_integral_coefficient(R, e_factor, 1, degree=16)
    c1_d = k_integral_coefficient(R, e_diag, 1, degree=16)
    assert abs(c1_f - c1_d) <= 1e-13


def test_trig_poly_top_component():
    # x^2 + y^2
    p = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    assert trig_poly_top_component(p, 2) == pytest.approx(0.0)
    # x^2 - y^2
    p = np.array([[0.0, 0.0, -1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    assert trig_poly_top_component(p, 2) == pytest.approx(2.0)
    # (x^2 + y^2)^2
    p = np.zeros((5, 5))
    p[4, 0] = 1.0
    p[2, 2] = 2.0
    p[0, 4] = 1.0
    assert trig_poly_top_component(p, 4) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        trig_poly_top_component(np.ones((2, 2)), 5)
