"""Deterministic quadrature on unit spheres inside hyperplanes.

Rules are spherical product Gauss rules: Gauss-Jacobi nodes in each polar
angle (after the cos substitution) and equally spaced nodes in the azimuth.
Every level is antipodally symmetric, so odd polynomials integrate to exactly
zero and even monomials of degree <= ``exact_degree`` are integrated exactly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

__all__ = [
    "SphereQuadrature",
    "monomial_sphere_integral",
    "sphere_rule",
    "radial_sphere_integral",
    "hyperplane_basis",
    "gauss_legendre",
    "sphere_area",
]


def sphere_area(m: int) -> float:
    """Surface measure of the unit sphere S^(m-1) in R^m."""
    return 2.0 * math.pi ** (m / 2.0) / math.gamma(m / 2.0)


def unit_ball_volume(m: int) -> float:
    """Volume of the unit ball in R^m."""
    return math.pi ** (m / 2.0) / math.gamma(m / 2.0 + 1.0)


def monomial_sphere_integral(exponents) -> float:
    """Integral of prod x_j^(alpha_j) over the unit sphere S^(m-1), m = len(exponents).

    Zero when some exponent is odd, otherwise
    2*Gamma(beta_1)...Gamma(beta_m)/Gamma(beta_1+...+beta_m) with
    beta_j = (alpha_j + 1)/2.
    """
    alphas = list(exponents)
    if any(a < 0 or a != int(a) for a in alphas):
        raise ValueError("exponents must be nonnegative integers")
    if any(a % 2 == 1 for a in alphas):
        return 0.0
    betas = [(a + 1) / 2.0 for a in alphas]
    num = 2.0
    for b in betas:
        num *= math.gamma(b)
    return num / math.gamma(sum(betas))


def hyperplane_basis(u: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to the unit vector u.

    Columns of the returned (n, n-1) matrix; built from the Householder
    reflection taking e_n to u, so the result is deterministic.
    """
    u = np.asarray(u, dtype=float)
    n = len(u)
    v = u - np.eye(n)[:, -1]
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        return np.eye(n)[:, : n - 1]
    H = np.eye(n) - 2.0 * np.outer(v, v) / (nv * nv)
    return H[:, : n - 1]


@dataclass(frozen=True)
class SphereQuadrature:
    """Nodes and weights on the unit sphere S^(n-2) inside the hyperplane u-perp."""

    ambient_dim: int
    normal: np.ndarray
    nodes: np.ndarray  # (N, n), unit vectors orthogonal to normal
    weights: np.ndarray  # (N,), positive
    exact_degree: int
    basis: np.ndarray  # (n, n-1) hyperplane basis used to embed the rule

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum of per-node values (deterministic pairwise reduction)."""
        return float(np.sum(self.weights * np.asarray(values, dtype=float)))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([f"x{i}" for i in range(self.ambient_dim)] + ["weight"])
            for node, w in zip(self.nodes, self.weights):
                writer.writerow([f"{c:.17g}" for c in node] + [f"{w:.17g}"])


def _unit_sphere_rule(m: int, degree: int):
    """Product rule on the unit sphere S^(m-1) in R^m, exact through ``degree``."""
    if m == 2:
        count = 2 * ((degree + 2) // 2)  # even count keeps antipodal symmetry
        theta = 2.0 * math.pi * np.arange(count) / count
        nodes = np.column_stack([np.cos(theta), np.sin(theta)])
        weights = np.full(count, 2.0 * math.pi / count)
        return nodes, weights
    sub_nodes, sub_weights = _unit_sphere_rule(m - 1, degree)
    k = m - 2  # polar weight sin^k(theta)
    npts = degree // 2 + 1
    t, wt = roots_jacobi(npts, (k - 1) / 2.0, (k - 1) / 2.0)
    s = np.sqrt(1.0 - t * t)
    nodes = np.empty((npts * len(sub_nodes), m))
    weights = np.empty(npts * len(sub_nodes))
    for i in range(npts):
        lo = i * len(sub_nodes)
        hi = lo + len(sub_nodes)
        nodes[lo:hi, 0] = t[i]
        nodes[lo:hi, 1:] = s[i] * sub_nodes
        weights[lo:hi] = wt[i] * sub_weights
    return nodes, weights


def sphere_rule(n: int, normal: np.ndarray, degree: int = 12) -> SphereQuadrature:
    """Quadrature on S^(n-2) inside the hyperplane orthogonal to ``normal``."""
    if not 3 <= n <= 16:
        raise ValueError("ambient dimension must be in [3, 16]")
    if degree > 40:
        raise ValueError("degree > 40 not supported")
    normal = np.asarray(normal, dtype=float)
    if abs(np.linalg.norm(normal) - 1.0) > 1e-12:
        raise ValueError("normal must be a unit vector")
    basis = hyperplane_basis(normal)
    flat_nodes, weights = _unit_sphere_rule(n - 1, degree)
    nodes = flat_nodes @ basis.T
    return SphereQuadrature(
        ambient_dim=n,
        normal=normal,
        nodes=nodes,
        weights=weights,
        exact_degree=degree,
        basis=basis,
    )


def gauss_legendre(npts: int, a: float, b: float):
    """Gauss-Legendre nodes/weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(npts)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def radial_sphere_integral(
    f,
    r: float,
    rule: SphereQuadrature,
    radial_nodes: int = 32,
    error_estimate: bool = True,
):
    """Integral of f(rho, w) over [0, r] x sphere(rule).

    ``f(rho, W)`` receives a scalar radius and the (N, n) node array and must
    return per-node values; the radial polar Jacobian is *not* applied here,
    callers fold it into ``f``.  The error estimate doubles the radial count
    and compares.
    """

    def evaluate(npts):
        rho, w_rho = gauss_legendre(npts, 0.0, r)
        total = 0.0
        for rv, wv in zip(rho, w_rho):
            vals = np.asarray(f(rv, rule.nodes), dtype=float)
            if not np.all(np.isfinite(vals)):
                raise ValueError("non-finite integrand sample")
            total += wv * float(np.sum(rule.weights * vals))
        return total

    value = evaluate(radial_nodes)
    if not error_estimate:
        return value, 0.0
    refined = evaluate(2 * radial_nodes)
    return refined, abs(refined - value)
