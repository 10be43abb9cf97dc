"""Tubes about non-geodesic curves in constant-curvature models.

A curve is carried as samples: ambient point, unit velocity, covariant
acceleration and an orthonormal tangent frame whose last leg is the velocity.
In a space form the curvature tensor has the same components in every such
frame, so the normal-disk integral reduces to an explicit radial profile plus
an acceleration term that is odd over the disk.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .curvature import RiemannCurvature, jacobi_operator
from .quadrature import gauss_legendre, sphere_rule
from .series import cotc_sqrt, sinc_sqrt

__all__ = [
    "CurveSpec",
    "omega_density",
    "tilde_jacobi_form",
    "datri_second_term",
    "general_curve_tube_volume",
    "line_r3",
    "arc_r3",
    "great_circle_s3",
    "small_circle_s3",
]

_CONJUGATE_MARGIN = 1e-3


@dataclass(frozen=True)
class CurveSpec:
    """Sampled unit-speed curve in a space form.

    ``model`` is one of euclidean, sphere (embedded unit sphere) or a custom
    tag; ``kappa`` the sectional curvature; ``dim`` the intrinsic dimension.
    ``frame[j, :, i]`` is E_i at sample j in ambient coordinates, with the
    last frame leg equal to the velocity, and ``acceleration`` the covariant
    acceleration of the curve.
    """

    model: str
    kappa: float
    dim: int
    t: np.ndarray  # (m,)
    point: np.ndarray  # (m, da)
    velocity: np.ndarray  # (m, da)
    acceleration: np.ndarray  # (m, da)
    frame: np.ndarray  # (m, da, dim)

    def __post_init__(self):
        for name in ("t", "point", "velocity", "acceleration", "frame"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        res = self.validation_residual()
        if res > 1e-8:
            raise ValueError(f"curve samples inconsistent (residual {res:g})")

    @property
    def length(self) -> float:
        return float(self.t[-1] - self.t[0])

    def validation_residual(self) -> float:
        res = float(np.max(np.abs(np.einsum("ma,ma->m", self.velocity, self.velocity) - 1.0)))
        gram = np.einsum("mai,maj->mij", self.frame, self.frame)
        res = max(res, float(np.max(np.abs(gram - np.eye(self.dim)))))
        res = max(res, float(np.max(np.abs(self.frame[:, :, -1] - self.velocity))))
        return res

    def frame_compatibility_residual(self) -> float:
        """Max of |g(E_i', gamma') + g(E_i, gamma'')| by interior finite differences.

        Second-order accurate in the sample step; not part of the hard
        construction-time validation for that reason.
        """
        if len(self.t) < 3:
            return 0.0
        dE = np.gradient(self.frame, self.t, axis=0)
        lhs = np.einsum("mai,ma->mi", dE, self.velocity)
        rhs = np.einsum("mai,ma->mi", self.frame, self.acceleration)
        return float(np.max(np.abs(lhs + rhs)[1:-1]))

    def frame_acceleration(self) -> np.ndarray:
        """Components <gamma'', E_i> at each sample; the last column vanishes."""
        return np.einsum("mai,ma->mi", self.frame, self.acceleration)

    def to_csv(self, path) -> None:
        da = self.point.shape[1]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = (
                ["model", "kappa", "dim"]
                + ["t"]
                + [f"p{i}" for i in range(da)]
                + [f"v{i}" for i in range(da)]
                + [f"a{i}" for i in range(da)]
                + [f"E{i}_{j}" for i in range(self.dim) for j in range(da)]
            )
            writer.writerow(header)
            for j in range(len(self.t)):
                row = [self.model, f"{self.kappa:.17g}", self.dim, f"{self.t[j]:.17g}"]
                row += [f"{c:.17g}" for c in self.point[j]]
                row += [f"{c:.17g}" for c in self.velocity[j]]
                row += [f"{c:.17g}" for c in self.acceleration[j]]
                for i in range(self.dim):
                    row += [f"{c:.17g}" for c in self.frame[j, :, i]]
                writer.writerow(row)

    @staticmethod
    def from_csv(path) -> "CurveSpec":
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        header, body = rows[0], rows[1:]
        da = sum(1 for h in header if h.startswith("p"))
        dim = sum(1 for h in header if h.startswith("E") and h.endswith("_0"))
        model = body[0][0]
        kappa = float(body[0][1])
        t, point, velocity, acceleration, frame = [], [], [], [], []
        for row in body:
            vals = [float(x) for x in row[3:]]
            t.append(vals[0])
            point.append(vals[1 : 1 + da])
            velocity.append(vals[1 + da : 1 + 2 * da])
            acceleration.append(vals[1 + 2 * da : 1 + 3 * da])
            fr = np.array(vals[1 + 3 * da :]).reshape(dim, da).T
            frame.append(fr)
        return CurveSpec(
            model=model,
            kappa=kappa,
            dim=dim,
            t=np.array(t),
            point=np.array(point),
            velocity=np.array(velocity),
            acceleration=np.array(acceleration),
            frame=np.array(frame),
        )


def omega_density(R: RiemannCurvature, w: np.ndarray) -> float:
    """Jacobian density of the exponential map at w: prod_i sinc_sqrt(lambda_i(R_w), 1)."""
    w = np.asarray(w, dtype=float)
    rho = float(np.linalg.norm(w))
    if rho == 0.0:
        return 1.0
    Ru = jacobi_operator(R, w / rho)
    out = 1.0
    for lam in Ru.eigenvalues:
        out *= sinc_sqrt(lam * rho * rho, 1.0)
    return out


def tilde_jacobi_form(R: RiemannCurvature, w: np.ndarray, u: np.ndarray) -> float:
    """Boundary derivative form of the Jacobi field vanishing at radius |w|.

    Returns sum_i cotc_sqrt(lambda_i, |w|) / |w| times the squared
    eigencomponents of u, which is 1/|w| in flat space.
    """
    w = np.asarray(w, dtype=float)
    u = np.asarray(u, dtype=float)
    rho = float(np.linalg.norm(w))
    if rho == 0.0:
        raise ValueError("w must be nonzero")
    Ru = jacobi_operator(R, w / rho)
    lam_max = float(np.max(Ru.eigenvalues))
    if lam_max > 0 and math.sqrt(lam_max) * rho > math.pi - _CONJUGATE_MARGIN:
        raise ValueError("conjugate point within radius")
    coeffs = Ru.eigenvectors.T @ u
    return float(
        sum(cotc_sqrt(lam, rho) / rho * c * c for lam, c in zip(Ru.eigenvalues, coeffs))
    )


def datri_second_term(
    R: RiemannCurvature,
    u: np.ndarray,
    v: np.ndarray,
    r: float,
    degree: int = 12,
    radial_nodes: int = 24,
) -> float:
    """Integral of <w, v> omega(w) over the radius-r normal ball of u.

    Vanishes whenever the density is even; the numerical value is the odd-part
    witness used in the volume-preserving symmetry test.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if abs(float(np.dot(u, v))) > 1e-12:
        raise ValueError("v must be orthogonal to u")
    rule = sphere_rule(R.dim, u, degree)
    n = R.dim
    rho_nodes, rho_w = gauss_legendre(radial_nodes, 0.0, r)
    total = 0.0
    for rho, wv in zip(rho_nodes, rho_w):
        vals = np.array(
            [float(np.dot(node, v)) * rho * omega_density(R, rho * node) for node in rule.nodes]
        )
        total += wv * rho ** (n - 2) * float(np.sum(rule.weights * vals))
    return total


def _space_form_profile(kappa: float, n: int, rho: float) -> tuple[float, float]:
    """(omega, rho * tilde form along the tangent) for a space form at radius rho."""
    omega = sinc_sqrt(kappa * rho * rho, 1.0) ** (n - 1)
    return omega, cotc_sqrt(kappa, rho)


def general_curve_tube_volume(
    curve: CurveSpec,
    r: float,
    degree: int = 12,
    radial_nodes: int = 32,
) -> tuple[float, float]:
    """Volume of the radius-r tube about a sampled curve, with an error estimate.

    The normal-disk integrand at arclength t and offset w = rho * xi is
    [cotc_sqrt(kappa, rho) - rho <xi, a(t)>] omega(rho) in frame coordinates,
    with a(t) the frame components of the covariant acceleration.  The
    t-integral is a composite trapezoid over the samples; the error estimate
    combines radial doubling with sample coarsening.
    """
    n = curve.dim
    kappa = curve.kappa
    if kappa > 0 and math.sqrt(kappa) * r > math.pi - _CONJUGATE_MARGIN:
        raise ValueError("conjugate point within tube radius")
    accel = curve.frame_acceleration()  # (m, n)
    rule = sphere_rule(n, np.eye(n)[-1], degree) if n >= 3 else None
    if rule is None:
        raise ValueError("intrinsic dimension must be at least 3")
    # mean of <xi, a> over the rule nodes, per sample
    node_dot = rule.nodes @ accel.T  # (N, m)

    def assemble(npts: int, stride: int = 1) -> float:
        rho_nodes, rho_w = gauss_legendre(npts, 0.0, r)
        density = np.zeros(len(curve.t))
        for rho, wv in zip(rho_nodes, rho_w):
            omega, cot_term = _space_form_profile(kappa, n, rho)
            jac = wv * rho ** (n - 2) * omega
            density += jac * (cot_term * float(np.sum(rule.weights)) - rho * (rule.weights @ node_dot))
        t = curve.t[::stride]
        return float(np.trapezoid(density[::stride], t))

    value = assemble(radial_nodes)
    refined = assemble(2 * radial_nodes)
    coarse_t = assemble(2 * radial_nodes, stride=2) if len(curve.t) >= 5 else value
    error = abs(refined - value) + abs(refined - coarse_t)
    return refined, error


def line_r3(length: float = 1.0, count: int = 33) -> CurveSpec:
    t = np.linspace(0.0, length, count)
    point = np.column_stack([np.zeros(count), np.zeros(count), t])
    velocity = np.tile([0.0, 0.0, 1.0], (count, 1))
    acceleration = np.zeros((count, 3))
    frame = np.tile(np.eye(3), (count, 1, 1))
    return CurveSpec("euclidean", 0.0, 3, t, point, velocity, acceleration, frame)


def arc_r3(radius: float = 2.0, length: float = 1.0, count: int = 33) -> CurveSpec:
    """Planar circular arc of the given bend radius, unit speed."""
    t = np.linspace(0.0, length, count)
    s = t / radius
    point = np.column_stack([radius * np.cos(s), radius * np.sin(s), np.zeros(count)])
    velocity = np.column_stack([-np.sin(s), np.cos(s), np.zeros(count)])
    acceleration = np.column_stack([-np.cos(s), -np.sin(s), np.zeros(count)]) / radius
    frame = np.empty((count, 3, 3))
    frame[:, :, 0] = np.column_stack([-np.cos(s), -np.sin(s), np.zeros(count)])
    frame[:, :, 1] = np.tile([0.0, 0.0, 1.0], (count, 1))
    frame[:, :, 2] = velocity
    return CurveSpec("euclidean", 0.0, 3, t, point, velocity, acceleration, frame)


def great_circle_s3(length: float = 1.0, count: int = 33) -> CurveSpec:
    """Geodesic on the unit 3-sphere embedded in R^4."""
    t = np.linspace(0.0, length, count)
    c, s = np.cos(t), np.sin(t)
    zero = np.zeros(count)
    point = np.column_stack([c, s, zero, zero])
    velocity = np.column_stack([-s, c, zero, zero])
    acceleration = np.zeros((count, 4))
    frame = np.empty((count, 4, 3))
    frame[:, :, 0] = np.column_stack([zero, zero, np.ones(count), zero])
    frame[:, :, 1] = np.column_stack([zero, zero, zero, np.ones(count)])
    frame[:, :, 2] = velocity
    return CurveSpec("sphere", 1.0, 3, t, point, velocity, acceleration, frame)


def small_circle_s3(kappa: float = 0.5, count: int = 65, closed: bool = True) -> CurveSpec:
    """Latitude circle on the unit 3-sphere with geodesic curvature kappa."""
    alpha = math.atan(kappa)
    ca, sa = math.cos(alpha), math.sin(alpha)
    length = 2.0 * math.pi * ca if closed else 1.0
    t = np.linspace(0.0, length, count)
    s = t / ca
    c, sn = np.cos(s), np.sin(s)
    zero = np.zeros(count)
    point = np.column_stack([ca * c, ca * sn, np.full(count, sa), zero])
    velocity = np.column_stack([-sn, c, zero, zero])
    acceleration = np.column_stack(
        [-c * sa * sa / ca, -sn * sa * sa / ca, np.full(count, sa), zero]
    )
    frame = np.empty((count, 4, 3))
    if kappa > 0:
        frame[:, :, 0] = acceleration / kappa
    else:
        frame[:, :, 0] = np.column_stack([-c * sa, -sn * sa, np.ones(count) * ca, zero])
    frame[:, :, 1] = np.column_stack([zero, zero, zero, np.ones(count)])
    frame[:, :, 2] = velocity
    return CurveSpec("sphere", 1.0, 3, t, point, velocity, acceleration, frame)
