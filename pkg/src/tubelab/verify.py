"""Acceptance checks shared by the command line driver and the test suite.

Each check returns a CheckResult with a pass flag and the numbers that were
compared, so both the tests and the `verify-all` subcommand can present the
same evidence.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from . import catalog
from .curvature import jacobi_operator, stein_check
from .curves import small_circle_s3
from .damek_ricci import (
    DamekRicciSpace,
    GroupPoint,
    build_heisenberg,
    euler_arnold_residual,
    tube_surface_area,
    tube_volume_closed_form,
)
from .lie import ad_power_trace, ad_power_trace_eigen, so3_so3_symmetric_pair
from .quadrature import sphere_area, sphere_rule, monomial_sphere_integral
from .series import cot_coeffs, log_det_sinc_series, matrix_trig
from .tubes import geodesic_tube_volume, tube_property_scan
from .curves import general_curve_tube_volume
from .curvature import gray_vanhecke_A, gray_vanhecke_B_einstein_geodesic
from .util import orthogonal_pairs, unit_vectors, weyl_samples

__all__ = ["CheckResult", "ALL_CHECKS", "run_checks"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    elapsed: float
    details: dict = field(default_factory=dict)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.elapsed:.2f}s)"


def _timed(fn):
    def wrapper() -> CheckResult:
        start = time.perf_counter()
        result = fn()
        result.elapsed = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    return wrapper


@_timed
def check_dr_closed_form() -> CheckResult:
    """Series engine vs the solvable-model closed form for (p, q) = (2, 1)."""
    R = catalog.ch2()
    e = np.eye(4)[0]
    worst = 0.0
    details = {}
    for r in (0.25, 0.5, 0.75):
        vol, _ = geodesic_tube_volume(R, e, r, 1.0, degree=16)
        ref = tube_volume_closed_form(2, 1, r, 1.0)
        rel = abs(vol - ref) / ref
        details[f"rel_err_r{r}"] = rel
        worst = max(worst, rel)
    return CheckResult("dr-closed-form", worst <= 1e-6, 0.0, details)


@_timed
def check_space_form_oracles() -> CheckResult:
    """Tube volumes on spheres and hyperbolic spaces against closed forms."""
    worst = 0.0
    details = {}
    for n in (3, 4, 7):
        e = np.eye(n)[0]
        for tag, R in (("s", catalog.sphere(n)), ("h", catalog.hyperbolic(n))):
            for r in (0.5, 1.0):
                vol, _ = geodesic_tube_volume(R, e, r, 1.0, degree=6)
                radial = math.sin(r) if tag == "s" else math.sinh(r)
                ref = sphere_area(n - 1) / (n - 1) * radial ** (n - 1)
                rel = abs(vol - ref) / ref
                details[f"rel_err_{tag}{n}_r{r}"] = rel
                worst = max(worst, rel)
    return CheckResult("space-form-oracles", worst <= 1e-8, 0.0, details)


@_timed
def check_surface_derivative() -> CheckResult:
    """Surface area equals d/dr of the closed-form volume (Richardson difference)."""
    worst = 0.0
    details = {}
    r, h = 0.7, 1e-3
    for p, q in ((2, 1), (4, 3), (8, 7)):
        def dv(step):
            return (
                tube_volume_closed_form(p, q, r + step, 1.0)
                - tube_volume_closed_form(p, q, r - step, 1.0)
            ) / (2.0 * step)

        deriv = (4.0 * dv(h / 2.0) - dv(h)) / 3.0
        area = tube_surface_area(p, q, r, 1.0)
        rel = abs(deriv - area) / area
        details[f"rel_err_p{p}q{q}"] = rel
        worst = max(worst, rel)
    return CheckResult("surface-derivative", worst <= 1e-8, 0.0, details)


@_timed
def check_tube_dichotomy() -> CheckResult:
    """Direction spread small on harmonic spaces, large on the product."""
    details = {}
    ok = True
    for name, R in (
        ("s4", catalog.sphere(4)),
        ("h4", catalog.hyperbolic(4)),
        ("ch2", catalog.ch2()),
    ):
        spread = tube_property_scan(R, 0.5, degree=20).spread
        details[f"spread_{name}"] = spread
        ok = ok and spread <= 1e-6
    Rp = catalog.get_space("s2xs2")
    spread = tube_property_scan(Rp, 0.5, degree=20).spread
    details["spread_s2xs2"] = spread
    # context: the direction dependence grows like r^4 and crosses 1e-3 near r = 2
    details["spread_s2xs2_r2"] = tube_property_scan(Rp, 2.0, degree=20).spread
    ok = ok and spread >= 1e-3
    return CheckResult("tube-dichotomy", ok, 0.0, details)


@_timed
def check_two_stein_dichotomy() -> CheckResult:
    details = {}
    ok = True
    for name in ("s3", "s4", "s7", "h3", "h4", "cp2", "ch2"):
        rep = stein_check(catalog.get_space(name))
        details[f"dev_{name}"] = rep.two_stein_deviation
        ok = ok and rep.two_stein_deviation <= 1e-10
    rep = stein_check(catalog.get_space("s2xs2"))
    details["dev_s2xs2"] = rep.two_stein_deviation
    details["einstein_dev_s2xs2"] = rep.einstein_deviation
    ok = ok and rep.two_stein_deviation >= 0.49 and rep.einstein_deviation <= 1e-12
    return CheckResult("two-stein-dichotomy", ok, 0.0, details)


@_timed
def check_datri_second_term() -> CheckResult:
    """Odd-weighted density integral vanishes on volume-symmetric spaces."""
    from .curves import datri_second_term

    worst = 0.0
    for name, R in (("s4", catalog.sphere(4)), ("h3", catalog.hyperbolic(3))):
        pairs = orthogonal_pairs(10, R.dim)
        for u, v in pairs:
            val = datri_second_term(R, u, v, 0.8, degree=8, radial_nodes=12)
            worst = max(worst, abs(val))
    return CheckResult("datri-second-term", worst <= 1e-10, 0.0, {"max_abs": worst})


@_timed
def check_hotelling_invariance() -> CheckResult:
    """Non-geodesic tube volume matches the geodesic value times length."""
    curve = small_circle_s3(kappa=0.5, count=129)
    r = 0.3
    vol, err = general_curve_tube_volume(curve, r, degree=10)
    ref = math.pi * math.sin(r) ** 2 * curve.length
    rel = abs(vol - ref) / ref
    return CheckResult(
        "hotelling-invariance",
        rel <= 1e-6,
        0.0,
        {"rel_err": rel, "volume": vol, "reference": ref, "error_estimate": err},
    )


@_timed
def check_gray_vanhecke() -> CheckResult:
    details = {}
    ok = True
    for n in range(3, 8):
        R = catalog.sphere(n)
        a = gray_vanhecke_A(R, np.eye(n)[0])
        details[f"A_s{n}_err"] = abs(a + (n - 1) / 6.0)
        ok = ok and details[f"A_s{n}_err"] <= 1e-12
    R3 = catalog.sphere(3)
    e = np.eye(3)[0]
    A = gray_vanhecke_A(R3, e)
    B = gray_vanhecke_B_einstein_geodesic(R3, e)
    radii = np.geomspace(0.02, 0.2, 12)
    resid = np.array(
        [
            abs((math.sin(r) / r) ** 2 - 1.0 - A * r * r - B * r ** 4)
            for r in radii
        ]
    )
    slope = float(np.polyfit(np.log(radii), np.log(resid), 1)[0])
    details["loglog_slope"] = slope
    details["B"] = B
    ok = ok and slope >= 5.5
    return CheckResult("gray-vanhecke", ok, 0.0, details)


@_timed
def check_series_machinery() -> CheckResult:
    details = {}
    ok = True
    # cotangent coefficients against the zeta-function closed form
    b = cot_coeffs(20).floats
    worst_b = 0.0
    for k in range(1, 21):
        ref = -2.0 * float(zeta(2 * k)) / math.pi ** (2 * k)
        worst_b = max(worst_b, abs(b[k] - ref) / abs(ref))
    details["bk_vs_zeta"] = worst_b
    ok = ok and worst_b <= 1e-13
    # series determinant against the spectral determinant, within its own bound
    worst_margin = -np.inf
    for name in ("s3", "s4", "h3", "h4", "cp2", "ch2", "s2xs2", "e4"):
        R = catalog.get_space(name)
        for u in unit_vectors(4, R.dim):
            Ru = jacobi_operator(R, u)
            S = [float(np.sum(Ru.eigenvalues ** k)) for k in range(1, 13)]
            for rho in (0.1, 0.5, 1.0):
                val, bound = log_det_sinc_series(S, rho, 12)
                spectral = matrix_trig(Ru, rho).det_sinc
                margin = abs(val - spectral) - bound - 1e-15
                worst_margin = max(worst_margin, margin)
    details["series_bound_margin"] = worst_margin
    ok = ok and worst_margin <= 0.0
    # quadrature exactness through degree 12
    worst_q = 0.0
    for n in (3, 4, 5):
        rule = sphere_rule(n, np.eye(n)[-1], 12)
        flat = rule.nodes @ rule.basis  # coordinates in the hyperplane
        for alphas in _even_exponents(n - 1, 12):
            exact = monomial_sphere_integral(alphas)
            approx = rule.integrate(np.prod(flat ** np.array(alphas), axis=1))
            worst_q = max(worst_q, abs(approx - exact))
    details["quadrature_error"] = worst_q
    ok = ok and worst_q <= 1e-11
    return CheckResult("series-machinery", ok, 0.0, details)


def _even_exponents(m: int, degree: int):
    """All even-exponent monomials on m variables with total degree <= degree."""
    if m == 0:
        yield ()
        return
    for a in range(0, degree + 1, 2):
        for rest in _even_exponents(m - 1, degree - a):
            yield (a,) + rest


@_timed
def check_ad_trace_witness() -> CheckResult:
    """Nonzero complexified ad-power traces on the product model, eigenvalue-checked."""
    L = so3_so3_symmetric_pair()
    a1 = np.zeros(6)
    a1[0] = 1.0
    a2 = np.zeros(6)
    a2[0] = 1.0
    a2[3] = 2.0
    details = {}
    ok = True
    for k in range(1, 5):
        val = ad_power_trace(L, a1, a2, k)
        ref = ad_power_trace_eigen(L, a1, a2, k)
        details[f"trace_k{k}"] = f"{val.real:.17g}{val.imag:+.17g}j"
        details[f"eigen_err_k{k}"] = abs(val - ref)
        ok = ok and abs(val) > 1e-6 and abs(val - ref) <= 1e-10
    return CheckResult("ad-trace-witness", ok, 0.0, details)


@_timed
def check_solvable_structure() -> CheckResult:
    """Axioms, group law, left-invariance, geodesics and the section ellipsoid."""
    details = {}
    ok = True
    for p, q in ((2, 1), (4, 3), (8, 7), (4, 1), (6, 1), (8, 1)):
        alg = build_heisenberg(p, q)
        details[f"axioms_p{p}q{q}"] = alg.axiom_residual()
        ok = ok and alg.axiom_residual() <= 1e-12
    space = DamekRicciSpace(build_heisenberg(2, 1))
    n = space.dim
    # associativity on deterministic triples
    samples = weyl_samples(300, n)
    worst_assoc = 0.0
    for i in range(100):
        a, b, c = (space.point(samples[3 * i + j]) for j in range(3))
        lhs = space.multiply(space.multiply(a, b), c).coords()
        rhs = space.multiply(a, space.multiply(b, c)).coords()
        worst_assoc = max(worst_assoc, float(np.max(np.abs(lhs - rhs))))
    details["associativity"] = worst_assoc
    ok = ok and worst_assoc <= 1e-12
    # left-invariance of the metric via the exact translation differential
    worst_inv = 0.0
    tangents = weyl_samples(100, n)
    points = weyl_samples(100, n, -0.5, 0.5)
    for i in range(50):
        g = space.point(points[2 * i])
        x = space.point(points[2 * i + 1])
        X = _split(space, tangents[2 * i])
        Y = _split(space, tangents[2 * i + 1])
        gx = space.multiply(g, x)
        LX = _left_translate(space, g, X)
        LY = _left_translate(space, g, Y)
        diff = abs(space.metric_at(gx, LX, LY) - space.metric_at(x, X, Y))
        worst_inv = max(worst_inv, diff)
    details["left_invariance"] = worst_inv
    ok = ok and worst_inv <= 1e-12
    # unit-speed geodesics and the geodesic-equation residual
    worst_speed = 0.0
    worst_ea = 0.0
    for p, q in ((2, 1), (4, 3)):
        sp = DamekRicciSpace(build_heisenberg(p, q))
        V = np.arange(1.0, p + 1.0)
        Z = np.arange(1.0, q + 1.0)
        norm = math.sqrt(float(V @ V + Z @ Z))
        V, Z = V / norm, Z / norm
        h = 1e-4
        for t in np.linspace(0.05, 2.0, 20):
            fwd = sp.geodesic_from_identity(V, Z, t + h).coords()
            bwd = sp.geodesic_from_identity(V, Z, t - h).coords()
            vel = (fwd - bwd) / (2.0 * h)
            x = sp.geodesic_from_identity(V, Z, t)
            speed = math.sqrt(sp.metric_at(x, _split(sp, vel), _split(sp, vel)))
            worst_speed = max(worst_speed, abs(speed - 1.0))
        worst_ea = max(worst_ea, euler_arnold_residual(sp, V, Z, np.linspace(0.1, 2.0, 8)))
    details["unit_speed"] = worst_speed
    details["euler_arnold"] = worst_ea
    ok = ok and worst_speed <= 1e-8 and worst_ea <= 1e-7
    # ellipsoid membership of the cross-section image
    worst_ell = 0.0
    r = 0.8
    sp = DamekRicciSpace(build_heisenberg(4, 3))
    sh2 = (2.0 * math.sinh(r / 2.0)) ** 2
    ch2v = math.cosh(r / 2.0) ** 2
    for row in weyl_samples(200, sp.p + sp.q):
        vz = row / np.linalg.norm(row)
        V, Z = vz[: sp.p], vz[sp.p :]
        pt = sp.cross_section_point(V, Z, r)
        lhs = float(pt[: sp.p] @ pt[: sp.p]) / sh2 + float(pt[sp.p :] @ pt[sp.p :]) / (
            sh2 * ch2v
        )
        worst_ell = max(worst_ell, abs(lhs - 1.0))
    details["ellipsoid"] = worst_ell
    ok = ok and worst_ell <= 1e-12
    return CheckResult("solvable-structure", ok, 0.0, details)


def _split(space: DamekRicciSpace, vec: np.ndarray):
    return (vec[: space.p], vec[space.p : space.p + space.q], float(vec[-1]))


def _left_translate(space: DamekRicciSpace, g: GroupPoint, X):
    """Differential of left translation by g (the group law is affine in the
    second factor's coordinates, so this is exact)."""
    V1, Z1, t1 = X
    half = math.exp(g.t / 2.0)
    V = half * np.asarray(V1, float)
    Z = math.exp(g.t) * np.asarray(Z1, float) + 0.5 * half * space.algebra.bracket_v(
        g.V, V1
    )
    return (V, Z, t1)


ALL_CHECKS = [
    ("dr-closed-form", check_dr_closed_form),
    ("space-form-oracles", check_space_form_oracles),
    ("surface-derivative", check_surface_derivative),
    ("tube-dichotomy", check_tube_dichotomy),
    ("two-stein-dichotomy", check_two_stein_dichotomy),
    ("datri-second-term", check_datri_second_term),
    ("hotelling-invariance", check_hotelling_invariance),
    ("gray-vanhecke", check_gray_vanhecke),
    ("series-machinery", check_series_machinery),
    ("ad-trace-witness", check_ad_trace_witness),
    ("solvable-structure", check_solvable_structure),
]


def run_checks(names=None) -> list[CheckResult]:
    selected = dict(ALL_CHECKS)
    if names is None:
        names = [n for n, _ in ALL_CHECKS]
    results = []
    for name in names:
        if name not in selected:
            raise ValueError(f"unknown check {name!r}")
        results.append(selected[name]())
    return results
