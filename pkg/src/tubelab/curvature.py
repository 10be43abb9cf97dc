"""Curvature tensor data model and the curvature-condition checkers.

Components are stored as R[i, j, k, l] = <R(e_i, e_j) e_k, e_l> in a fixed
orthonormal basis, with the sign fixed so that <R(x, u) u, x> is the
sectional curvature of span(x, u); on the unit sphere every Jacobi operator
is then positive semidefinite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RiemannCurvature",
    "CurvatureDiagnostics",
    "JacobiOperator",
    "SteinReport",
    "PQTensors",
    "validate_curvature",
    "ricci",
    "scalar",
    "jacobi_operator",
    "jacobi_matrices",
    "power_sum",
    "stein_probes",
    "stein_check",
    "pq_tensors",
    "pq_identity_check",
    "gray_vanhecke_A",
    "gray_vanhecke_B_einstein_geodesic",
    "curvature_to_json",
    "curvature_from_json",
]


@dataclass(frozen=True)
class RiemannCurvature:
    """Rank-4 curvature component array in an orthonormal basis at a point."""

    dim: int
    components: np.ndarray

    def __post_init__(self):
        comps = np.ascontiguousarray(self.components, dtype=float)
        if comps.shape != (self.dim,) * 4:
            raise ValueError("components must have shape (n, n, n, n)")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)

    def sectional(self, x: np.ndarray, u: np.ndarray) -> float:
        """Sectional curvature of the plane spanned by orthonormal x, u."""
        return float(np.einsum("ijkl,i,j,k,l->", self.components, x, u, u, x))


@dataclass(frozen=True)
class CurvatureDiagnostics:
    antisymmetry: float
    pair_symmetry: float
    first_bianchi: float
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.antisymmetry, self.pair_symmetry, self.first_bianchi)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def validate_curvature(R: RiemannCurvature, tol: float = 1e-12) -> CurvatureDiagnostics:
    """Max residuals of the antisymmetry, pair-symmetry and first-Bianchi identities."""
    c = R.components
    if not np.all(np.isfinite(c)):
        raise ValueError("curvature components must be finite")
    anti = max(
        float(np.max(np.abs(c + np.swapaxes(c, 0, 1)))),
        float(np.max(np.abs(c + np.swapaxes(c, 2, 3)))),
    )
    pair = float(np.max(np.abs(c - np.transpose(c, (2, 3, 0, 1)))))
    bianchi = float(
        np.max(np.abs(c + np.transpose(c, (1, 2, 0, 3)) + np.transpose(c, (2, 0, 1, 3))))
    )
    return CurvatureDiagnostics(anti, pair, bianchi, tol)


def ricci(R: RiemannCurvature) -> np.ndarray:
    """Ricci tensor rho_ab = sum_i <R(e_i, e_a) e_b, e_i>."""
    return np.einsum("iabi->ab", R.components)


def scalar(R: RiemannCurvature) -> float:
    """Scalar curvature, the trace of the Ricci tensor."""
    return float(np.trace(ricci(R)))


@dataclass(frozen=True)
class JacobiOperator:
    """Symmetric operator x -> R(x, u) u with a cached eigendecomposition."""

    dim: int
    matrix: np.ndarray
    direction: np.ndarray
    eigenvalues: np.ndarray = field(init=False)
    eigenvectors: np.ndarray = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if np.max(np.abs(m - m.T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
            raise ValueError("Jacobi operator matrix must be symmetric")
        lam, vec = np.linalg.eigh(0.5 * (m + m.T))
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", vec)

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.dim else 0.0


def jacobi_operator(R: RiemannCurvature, u: np.ndarray) -> JacobiOperator:
    """Jacobi operator of a unit direction u."""
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise ValueError("direction must be a unit vector")
    m = np.einsum("ajkb,j,k->ab", R.components, u, u)
    return JacobiOperator(dim=R.dim, matrix=0.5 * (m + m.T), direction=u)


def jacobi_matrices(R: RiemannCurvature, directions: np.ndarray) -> np.ndarray:
    """Stacked Jacobi-operator matrices for a (N, n) batch of unit directions."""
    m = np.einsum("ajkb,nj,nk->nab", R.components, directions, directions)
    return 0.5 * (m + np.swapaxes(m, 1, 2))


def power_sum(Ru: JacobiOperator, k: int) -> float:
    """S_k = tr(Ru^k) from the eigenvalue cache; k must be positive."""
    if k < 1:
        raise ValueError("k must be a positive integer (use dim for k = 0)")
    return float(np.sum(Ru.eigenvalues ** k))


def stein_probes(n: int) -> np.ndarray:
    """Deterministic probe directions: basis vectors and 2- and 3-index diagonals."""
    eye = np.eye(n)
    probes = [eye[a] for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            probes.append((eye[a] + eye[b]) / math.sqrt(2.0))
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                probes.append((eye[a] + eye[b] + eye[c]) / math.sqrt(3.0))
    return np.array(probes)


@dataclass(frozen=True)
class SteinReport:
    einstein_constant: float
    einstein_deviation: float
    two_stein_constant: float
    two_stein_deviation: float
    probes: np.ndarray

    def is_einstein(self, tol: float = 1e-8) -> bool:
        return self.einstein_deviation <= tol

    def is_two_stein(self, tol: float = 1e-8) -> bool:
        return self.is_einstein(tol) and self.two_stein_deviation <= tol


def stein_check(R: RiemannCurvature, probes: np.ndarray | None = None) -> SteinReport:
    """Einstein and 2-stein deviations of rho(u, u) and tr(Ru^2) over probe directions.

    The reported constants are probe means and each deviation is the full
    probe range max - min, so a split of the probe values into two clusters
    shows up at its actual separation.
    """
    n = R.dim
    if probes is None:
        probes = stein_probes(n)
    probes = np.asarray(probes, dtype=float)
    if len(probes) < n * (n + 1) // 2:
        raise ValueError("need at least n(n+1)/2 probe directions")
    norms = np.linalg.norm(probes, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-12:
        raise ValueError("probe vectors must be unit norm")
    mats = jacobi_matrices(R, probes)
    ric_vals = np.einsum("nii->n", mats)  # rho(u, u) = tr(Ru)
    sq_vals = np.einsum("nij,nij->n", mats, mats)  # tr(Ru^2)
    K = float(np.mean(ric_vals))
    lam = float(np.mean(sq_vals))
    return SteinReport(
        einstein_constant=K,
        einstein_deviation=float(np.max(ric_vals) - np.min(ric_vals)),
        two_stein_constant=lam,
        two_stein_deviation=float(np.max(sq_vals) - np.min(sq_vals)),
        probes=probes,
    )


@dataclass(frozen=True)
class PQTensors:
    P: np.ndarray
    Q: np.ndarray
    norm_R_sq: float


def pq_tensors(R: RiemannCurvature) -> PQTensors:
    """P_ab = sum R_aijk R_bijk and Q_abcd = sum_ij R_aibj R_cidj."""
    c = R.components
    P = np.einsum("aijk,bijk->ab", c, c)
    Q = np.einsum("aibj,cidj->abcd", c, c)
    return PQTensors(P=P, Q=Q, norm_R_sq=float(np.einsum("ijkl,ijkl->", c, c)))


def pq_identity_check(pq: PQTensors, K: float, tol: float = 1e-10):
    """Residuals of the trace identities linking P, Q, ||R||^2 and the Einstein constant."""
    n = pq.P.shape[0]
    residuals = []
    for a in range(n):
        residuals.append(("Q_abab=P_aa", abs(float(np.einsum("bb->", pq.Q[a, :, a, :])) - pq.P[a, a])))
        residuals.append(
            ("Q_abba=P_aa/2", abs(float(np.trace(pq.Q[a, :, :, a])) - 0.5 * pq.P[a, a]))
        )
        residuals.append(
            ("Q_aabb=K^2", abs(float(np.trace(pq.Q[a, a, :, :])) - K * K))
        )
    residuals.append(("tr_P=normR2", abs(float(np.trace(pq.P)) - pq.norm_R_sq)))
    return [(name, value, value <= tol) for name, value in residuals]


def _rotate_first_axis(R: RiemannCurvature, e: np.ndarray) -> np.ndarray:
    """Components in an orthonormal basis whose first vector is e."""
    e = np.asarray(e, dtype=float)
    n = R.dim
    v = e - np.eye(n)[:, 0]
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        return R.components
    Q = np.eye(n) - 2.0 * np.outer(v, v) / (nv * nv)
    c = np.einsum("abcd,ai->ibcd", R.components, Q)
    c = np.einsum("ibcd,bj->ijcd", c, Q)
    c = np.einsum("ijcd,ck->ijkd", c, Q)
    return np.einsum("ijkd,dl->ijkl", c, Q)


def gray_vanhecke_A(R: RiemannCurvature, e: np.ndarray) -> float:
    """Quadratic tube coefficient -(tau + rho(e, e)) / (6(n + 1))."""
    e = np.asarray(e, dtype=float)
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("e must be a unit vector")
    rho = ricci(R)
    return -(scalar(R) + float(e @ rho @ e)) / (6.0 * (R.dim + 1))


def gray_vanhecke_B_einstein_geodesic(
    R: RiemannCurvature, e: np.ndarray, einstein_tol: float = 1e-8
) -> float:
    """Quartic tube coefficient for a geodesic in an Einstein manifold.

    Index 1 of the curvature components refers to the curve direction e; the
    basis is rotated accordingly before contracting.
    """
    e = np.asarray(e, dtype=float)
    if abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("e must be a unit vector")
    report = stein_check(R)
    if report.einstein_deviation > einstein_tol:
        raise ValueError(
            f"input is not Einstein within {einstein_tol:g} "
            f"(deviation {report.einstein_deviation:g})"
        )
    n = R.dim
    c = _rotate_first_axis(R, e)
    rho = np.einsum("iabi->ab", c)
    tau = float(np.trace(rho))
    rho11 = float(rho[0, 0])
    norm_rho_sq = float(np.sum(rho * rho))
    norm_R_sq = float(np.sum(c * c))
    sum_R1ijk = float(np.sum(c[0, 1:, 1:, 1:] ** 2))
    sum_R1i1j = float(np.sum(c[0, 1:, 0, 1:] ** 2))
    numerator = (
        5.0 * tau * tau
        + 8.0 * norm_rho_sq
        - 3.0 * norm_R_sq
        + 10.0 * tau * rho11
        + 14.0 * rho11 * rho11
        - 6.0 * sum_R1ijk
        - 3.0 * rho11 * rho11
        - 10.0 * sum_R1i1j
    )
    return numerator / (360.0 * (n + 1) * (n + 3))


def curvature_to_json(R: RiemannCurvature) -> str:
    """Serialize to {dim, components (flat row-major), convention}."""
    return json.dumps(
        {
            "dim": R.dim,
            "components": R.components.ravel().tolist(),
            "convention": "R(x,y,z,w)",
        }
    )


def curvature_from_json(text: str, tol: float = 1e-10) -> RiemannCurvature:
    """Load a curvature tensor and re-validate its symmetries."""
    doc = json.loads(text)
    n = int(doc["dim"])
    comps = np.array(doc["components"], dtype=float).reshape((n,) * 4)
    R = RiemannCurvature(dim=n, components=comps)
    diag = validate_curvature(R, tol)
    if not diag.passed:
        raise ValueError(f"curvature symmetries violated (max residual {diag.max_residual:g})")
    return R
