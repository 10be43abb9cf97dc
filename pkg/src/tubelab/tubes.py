"""Tube volumes about geodesics in locally symmetric spaces.

The integrand over the normal sphere bundle factors spectrally through the
Jacobi operator of each normal direction: a determinant of sinc factors times
a cotangent quadratic form in the tangent direction.  A per-direction scanner
measures how far a space is from having direction-independent tube volumes,
and a coefficient scanner extracts the even Taylor coefficients of the radial
density.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .curvature import RiemannCurvature, jacobi_matrices, jacobi_operator
from .quadrature import SphereQuadrature, gauss_legendre, sphere_rule
from .series import (
    cot_coeffs,
    cotc_sqrt,
    cotc_sqrt_array,
    log_det_sinc_series,
    matrix_trig,
    sinc_sqrt_array,
)

__all__ = [
    "TubeVolumeReport",
    "geodesic_tube_integrand",
    "geodesic_tube_volume",
    "tube_property_scan",
    "tube_directions",
    "k_integral_coefficient",
    "trig_poly_top_component",
]

_EVAL_CHUNK = 200_000  # max eigenvalue-array entries handled per batch


@dataclass(frozen=True)
class TubeVolumeReport:
    """Per-direction tube volumes at one radius, with the relative spread."""

    radius: float
    length: float
    directions: np.ndarray  # (m, n) unit vectors
    values: np.ndarray  # (m,)
    error_estimates: np.ndarray  # (m,)
    series_order: int
    quadrature_degree: int

    @property
    def spread(self) -> float:
        mean = float(np.mean(self.values))
        return float((np.max(self.values) - np.min(self.values)) / mean)

    def to_json(self) -> str:
        return json.dumps(
            {
                "radius": self.radius,
                "length": self.length,
                "spread": self.spread,
                "series_order": self.series_order,
                "quadrature_degree": self.quadrature_degree,
                "directions": [[float(c) for c in e] for e in self.directions],
                "values": [float(v) for v in self.values],
                "error_estimates": [float(v) for v in self.error_estimates],
            },
            indent=2,
        )

    def to_csv(self, path) -> None:
        n = self.directions.shape[1]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["index"] + [f"e{i}" for i in range(n)] + ["value", "error"])
            rows = zip(self.directions, self.values, self.error_estimates)
            for idx, (e, v, err) in enumerate(rows):
                writer.writerow(
                    [idx] + [f"{c:.17g}" for c in e] + [f"{v:.17g}", f"{err:.17g}"]
                )


def geodesic_tube_integrand(
    R: RiemannCurvature,
    e: np.ndarray,
    u: np.ndarray,
    rho: float,
    method: str = "spectral",
    series_order: int = 12,
) -> float:
    """Radial density rho^(n-2) * det_sinc(R_u, rho) * <sqrt(R_u) rho cot(sqrt(R_u) rho) e, e>."""
    e = np.asarray(e, dtype=float)
    u = np.asarray(u, dtype=float)
    if abs(float(np.dot(e, u))) > 1e-12:
        raise ValueError("u must be orthogonal to e")
    Ru = jacobi_operator(R, u)
    n = R.dim
    if method == "spectral":
        trig = matrix_trig(Ru, rho)
        det = trig.det_sinc
        cot_form = float(
            sum(
                cotc_sqrt(lam, rho) * c * c
                for lam, c in zip(Ru.eigenvalues, Ru.eigenvectors.T @ e)
            )
        )
    elif method == "series":
        S = [float(np.sum(Ru.eigenvalues ** k)) for k in range(1, series_order + 1)]
        det, _ = log_det_sinc_series(S, rho, series_order)
        b = cot_coeffs(series_order).floats
        powers = np.array(
            [float(np.dot(e, np.linalg.matrix_power(Ru.matrix, k) @ e)) for k in range(series_order + 1)]
        )
        cot_form = float(np.sum(b * powers * rho ** (2 * np.arange(series_order + 1))))
    else:
        raise ValueError("method must be 'spectral' or 'series'")
    return rho ** (n - 2) * det * cot_form


def _node_spectra(R: RiemannCurvature, e: np.ndarray, nodes: np.ndarray):
    """Per-node Jacobi eigenvalues and the squared eigencomponents of e."""
    n = R.dim
    chunk = max(1, _EVAL_CHUNK // n)
    lams = np.empty((len(nodes), n))
    ecoef2 = np.empty((len(nodes), n))
    for lo in range(0, len(nodes), chunk):
        hi = min(lo + chunk, len(nodes))
        mats = jacobi_matrices(R, nodes[lo:hi])
        w, v = np.linalg.eigh(mats)
        lams[lo:hi] = w
        ecoef2[lo:hi] = np.einsum("mij,i->mj", v, e) ** 2
    return lams, ecoef2


def _radial_profile(lams: np.ndarray, ecoef2: np.ndarray, rho: float, n: int) -> np.ndarray:
    """Integrand values at radius rho for all nodes at once."""
    rr = np.full_like(lams, rho)
    det = np.prod(sinc_sqrt_array(lams, rr), axis=1)
    cot_form = np.sum(cotc_sqrt_array(lams, rr) * ecoef2, axis=1)
    return rho ** (n - 2) * det * cot_form


def geodesic_tube_volume(
    R: RiemannCurvature,
    e: np.ndarray,
    r: float,
    l: float = 1.0,
    rule: SphereQuadrature | None = None,
    degree: int = 12,
    radial_nodes: int = 32,
) -> tuple[float, float]:
    """Tube volume about a geodesic segment of length l, with an error estimate.

    The angular rule lives on the unit sphere of the hyperplane orthogonal to
    the tangent direction e; the radial integral uses Gauss-Legendre with a
    doubled-count comparison for the error estimate.
    """
    e = np.asarray(e, dtype=float)
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("tangent direction must be a unit vector")
    if r <= 0 or l <= 0:
        raise ValueError("radius and length must be positive")
    if rule is None:
        rule = sphere_rule(R.dim, e, degree)
    lams, ecoef2 = _node_spectra(R, e, rule.nodes)

    def radial_value(npts: int) -> float:
        rho, w_rho = gauss_legendre(npts, 0.0, r)
        total = 0.0
        for rv, wv in zip(rho, w_rho):
            vals = _radial_profile(lams, ecoef2, rv, R.dim)
            total += wv * float(np.sum(rule.weights * vals))
        return total

    coarse = radial_value(radial_nodes)
    fine = radial_value(2 * radial_nodes)
    return l * fine, l * abs(fine - coarse)


def tube_directions(n: int) -> np.ndarray:
    """Deterministic direction set: basis vectors plus two- and three-index diagonals."""
    eye = np.eye(n)
    dirs = [eye[a] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            dirs.append((eye[a] + eye[b]) / math.sqrt(2.0))
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                dirs.append((eye[a] + eye[b] + eye[c]) / math.sqrt(3.0))
    return np.array(dirs)


def tube_property_scan(
    R: RiemannCurvature,
    r: float,
    directions: np.ndarray | None = None,
    degree: int = 12,
    radial_nodes: int = 32,
) -> TubeVolumeReport:
    """V_e(r) with l = 1 for each direction e; the spread is the tube-property gauge."""
    if directions is None:
        directions = tube_directions(R.dim)
    directions = np.asarray(directions, dtype=float)
    values = np.empty(len(directions))
    errors = np.empty(len(directions))
    for i, e in enumerate(directions):
        values[i], errors[i] = geodesic_tube_volume(
            R, e, r, 1.0, degree=degree, radial_nodes=radial_nodes
        )
    return TubeVolumeReport(
        radius=r,
        length=1.0,
        directions=directions,
        values=values,
        error_estimates=errors,
        series_order=0,
        quadrature_degree=degree,
    )


def k_integral_coefficient(
    R: RiemannCurvature,
    e: np.ndarray,
    k: int,
    rule: SphereQuadrature | None = None,
    degree: int = 12,
) -> float:
    """Coefficient of rho^(2k) in the normal-sphere integral of the radial density
    divided by rho^(n-2).

    Per direction u the density is exp(sum_j g_j rho^(2j)) * sum_l h_l rho^(2l)
    with g_j = (b_j / 2j) tr(R_u^j) and h_l = b_l <R_u^l e, e>; the exponential
    is expanded by the standard power-series recurrence, which is exactly the
    multiset partition sum with 1/m! multiplicities.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    e = np.asarray(e, dtype=float)
    if rule is None:
        rule = sphere_rule(R.dim, e, degree)
    lams, ecoef2 = _node_spectra(R, e, rule.nodes)
    b = cot_coeffs(max(k, 1)).floats
    m = len(rule.nodes)
    # g[j] per node, j = 1..k; h[l] per node, l = 0..k
    g = np.zeros((k + 1, m))
    h = np.empty((k + 1, m))
    for j in range(1, k + 1):
        g[j] = (b[j] / (2.0 * j)) * np.sum(lams ** j, axis=1)
    h[0] = np.sum(ecoef2, axis=1)  # = 1 for unit e, kept explicit
    for l in range(1, k + 1):
        h[l] = b[l] * np.sum(lams ** l * ecoef2, axis=1)
    d = np.zeros((k + 1, m))
    d[0] = 1.0
    for j in range(1, k + 1):
        acc = np.zeros(m)
        for i in range(1, j + 1):
            acc += i * g[i] * d[j - i]
        d[j] = acc / j
    c_k = np.zeros(m)
    for l in range(0, k + 1):
        c_k += d[k - l] * h[l]
    return float(np.sum(rule.weights * c_k))


def trig_poly_top_component(coeffs: np.ndarray, k: int) -> complex:
    """Evaluate the degree-k homogeneous part of a bivariate polynomial at (1, i).

    ``coeffs[a, b]`` multiplies x^a y^b.  A vanishing value is the constancy
    obstruction for the associated trigonometric polynomial.
    """
    coeffs = np.asarray(coeffs)
    if k < 0 or k > sum(s - 1 for s in coeffs.shape):
        raise ValueError("k outside the polynomial degree range")
    total = 0j
    for a in range(coeffs.shape[0]):
        bb = k - a
        if 0 <= bb < coeffs.shape[1]:
            total += complex(coeffs[a, bb]) * (1j ** bb)
    return total
