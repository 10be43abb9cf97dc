"""Generalized Heisenberg algebras and the solvable group model built over
them: group multiplication, left-invariant metric, explicit geodesics from
the identity, the tube cross-section ellipsoid, and the closed-form tube
volume and tubular surface area.

Admissible built-in parameter pairs use the complex, quaternionic and
octonionic left-multiplication operators.  The octonion table comes from the
Cayley-Dickson doubling of the quaternions with (a, b)(c, d) =
(ac - conj(d) b, d a + b conj(c)); other conventions permute signs but give
isomorphic algebras.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lie import LieAlgebraData
from .quadrature import unit_ball_volume

__all__ = [
    "HeisenbergAlgebra",
    "GroupPoint",
    "DamekRicciSpace",
    "build_heisenberg",
    "tube_volume_closed_form",
    "tube_surface_area",
    "euler_arnold_residual",
]


def _quaternion_table() -> np.ndarray:
    """T[a, b, c]: e_a * e_b = sum_c T[a, b, c] e_c for basis (1, i, j, k)."""
    T = np.zeros((4, 4, 4))
    T[0, :, :] = np.eye(4)
    T[:, 0, :] = np.eye(4)
    for a in range(1, 4):
        T[a, a, 0] = -1.0
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        T[a, b, c] = 1.0
        T[b, a, c] = -1.0
    return T


def _conj_matrix(dim: int) -> np.ndarray:
    C = -np.eye(dim)
    C[0, 0] = 1.0
    return C


def _octonion_table() -> np.ndarray:
    """Cayley-Dickson doubling of the quaternions: T[a, b, c] over basis e_0..e_7."""
    q = _quaternion_table()
    d = 4
    C = _conj_matrix(d)
    out = np.zeros((8, 8, 8))
    for ai in range(d):
        for ci in range(d):
            # (e_a, 0)(e_c, 0) = (e_a e_c, 0)
            out[ai, ci, :d] = q[ai, ci]
    for ai in range(d):
        for di in range(d):
            # (e_a, 0)(0, e_d) = (0, e_d e_a)
            out[ai, d + di, d:] = q[di, ai]
    for bi in range(d):
        for ci in range(d):
            # (0, e_b)(e_c, 0) = (0, e_b conj(e_c))
            out[d + bi, ci, d:] = q[bi].T @ C[:, ci]
    for bi in range(d):
        for di in range(d):
            # (0, e_b)(0, e_d) = (-conj(e_d) e_b, 0)
            out[d + bi, d + di, :d] = -np.einsum("j,jk->k", C[:, di], q[:, bi, :])
    return out


def _left_mult_matrices(table: np.ndarray):
    """L_a[c, b] so that e_a * x = L_a x in coordinates."""
    return [table[a, :, :].T for a in range(table.shape[0])]


@dataclass(frozen=True)
class HeisenbergAlgebra:
    """Two-step nilpotent algebra v + z encoded by skew maps J_1..J_q on v."""

    p: int
    q: int
    J: np.ndarray  # (q, p, p)

    def __post_init__(self):
        J = np.ascontiguousarray(self.J, dtype=float)
        if J.shape != (self.q, self.p, self.p):
            raise ValueError("J must have shape (q, p, p)")
        object.__setattr__(self, "J", J)
        res = self.axiom_residual()
        if res > 1e-12:
            raise ValueError(f"generalized Heisenberg axioms violated (residual {res:g})")

    def axiom_residual(self) -> float:
        eye = np.eye(self.p)
        res = 0.0
        for i in range(self.q):
            res = max(res, float(np.max(np.abs(self.J[i] + self.J[i].T))))
        for i in range(self.q):
            for j in range(self.q):
                anti = self.J[i] @ self.J[j] + self.J[j] @ self.J[i]
                target = -2.0 * (1.0 if i == j else 0.0) * eye
                res = max(res, float(np.max(np.abs(anti - target))))
        return res

    def J_of(self, Z: np.ndarray) -> np.ndarray:
        """J_Z = sum_i Z_i J_i."""
        return np.einsum("i,iab->ab", np.asarray(Z, dtype=float), self.J)

    def bracket_v(self, V1: np.ndarray, V2: np.ndarray) -> np.ndarray:
        """[V1, V2] in the center: component i is <J_i V1, V2>."""
        return np.einsum("iab,b,a->i", self.J, np.asarray(V1, float), np.asarray(V2, float))


def build_heisenberg(p: int, q: int, J: np.ndarray | None = None) -> HeisenbergAlgebra:
    """Built-in algebras for (p even, q=1), (p = 4m, q=3), (p, q) = (8, 7), or custom J."""
    if J is not None:
        return HeisenbergAlgebra(p=p, q=q, J=np.asarray(J, dtype=float))
    if q == 1 and p % 2 == 0 and p > 0:
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        J1 = np.kron(np.eye(p // 2), rot)
        return HeisenbergAlgebra(p=p, q=1, J=J1[None, :, :])
    if q == 3 and p % 4 == 0 and p > 0:
        mats = _left_mult_matrices(_quaternion_table())[1:]
        blocks = [np.kron(np.eye(p // 4), m) for m in mats]
        return HeisenbergAlgebra(p=p, q=3, J=np.array(blocks))
    if q == 7 and p == 8:
        mats = _left_mult_matrices(_octonion_table())[1:]
        return HeisenbergAlgebra(p=8, q=7, J=np.array(mats))
    raise ValueError(f"(p, q) = ({p}, {q}) is not an admissible built-in pair")


@dataclass(frozen=True)
class GroupPoint:
    """The point (exp_n(V + Z), t) of the solvable group in global coordinates."""

    V: np.ndarray
    Z: np.ndarray
    t: float

    def coords(self) -> np.ndarray:
        return np.concatenate([self.V, self.Z, [self.t]])


@dataclass(frozen=True)
class DamekRicciSpace:
    algebra: HeisenbergAlgebra

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def q(self) -> int:
        return self.algebra.q

    @property
    def dim(self) -> int:
        return self.p + self.q + 1

    def identity(self) -> GroupPoint:
        return GroupPoint(np.zeros(self.p), np.zeros(self.q), 0.0)

    def point(self, coords: np.ndarray) -> GroupPoint:
        coords = np.asarray(coords, dtype=float)
        return GroupPoint(coords[: self.p], coords[self.p : self.p + self.q], float(coords[-1]))

    def multiply(self, a: GroupPoint, b: GroupPoint) -> GroupPoint:
        half = math.exp(a.t / 2.0)
        V = a.V + half * b.V
        Z = a.Z + math.exp(a.t) * b.Z + 0.5 * half * self.algebra.bracket_v(a.V, b.V)
        return GroupPoint(V, Z, a.t + b.t)

    def inverse(self, a: GroupPoint) -> GroupPoint:
        # [V, V] = 0, so the central correction vanishes
        return GroupPoint(-math.exp(-a.t / 2.0) * a.V, -math.exp(-a.t) * a.Z, -a.t)

    def metric_at(self, x: GroupPoint, X, Y) -> float:
        """Metric on coordinate tangent vectors X = (V1, Z1, t1) at the point x."""
        V1, Z1, t1 = X
        V2, Z2, t2 = Y
        zc1 = np.asarray(Z1, float) - 0.5 * self.algebra.bracket_v(x.V, V1)
        zc2 = np.asarray(Z2, float) - 0.5 * self.algebra.bracket_v(x.V, V2)
        return float(
            math.exp(-x.t) * np.dot(V1, V2)
            + math.exp(-2.0 * x.t) * np.dot(zc1, zc2)
            + t1 * t2
        )

    def metric_gram(self, x: GroupPoint) -> np.ndarray:
        """Gram matrix of the coordinate frame at x."""
        n = self.dim
        G = np.empty((n, n))
        basis = np.eye(n)
        vecs = [(b[: self.p], b[self.p : self.p + self.q], b[-1]) for b in basis]
        for i in range(n):
            for j in range(i, n):
                G[i, j] = G[j, i] = self.metric_at(x, vecs[i], vecs[j])
        return G

    def geodesic_from_identity(self, V: np.ndarray, Z: np.ndarray, t: float) -> GroupPoint:
        """Unit-speed geodesic with initial velocity V + Z orthogonal to the solvable axis."""
        V = np.asarray(V, dtype=float)
        Z = np.asarray(Z, dtype=float)
        z2 = float(np.dot(Z, Z))
        theta = math.tanh(t / 2.0)
        chi = 1.0 + z2 * theta * theta
        JZV = self.algebra.J_of(Z) @ V
        v_part = (2.0 * theta / chi) * V + (2.0 * theta * theta / chi) * JZV
        z_part = (2.0 * theta / chi) * Z
        return GroupPoint(v_part, z_part, math.log((1.0 - theta * theta) / chi))

    def cross_section_point(self, V: np.ndarray, Z: np.ndarray, r: float) -> np.ndarray:
        """Image of the geodesic endpoint in the fixed cross-section, as a v + z vector."""
        V = np.asarray(V, dtype=float)
        Z = np.asarray(Z, dtype=float)
        theta = math.tanh(r / 2.0)
        chi = 1.0 + float(np.dot(Z, Z)) * theta * theta
        JZV = self.algebra.J_of(Z) @ V
        scale_v = 2.0 * theta / math.sqrt((1.0 - theta * theta) * chi)
        v_part = scale_v * (V + theta * JZV)
        z_part = (2.0 * theta / (1.0 - theta * theta)) * Z
        return np.concatenate([v_part, z_part])

    def lie_algebra_data(self) -> LieAlgebraData:
        """Structure constants of the solvable algebra in the orthonormal (V, Z, A) basis."""
        p, q, n = self.p, self.q, self.dim
        c = np.zeros((n, n, n))
        for a in range(p):
            for b in range(p):
                c[a, b, p : p + q] = self.algebra.J[:, b, a]  # <J_i e_a, e_b>
        iA = n - 1
        for a in range(p):
            c[iA, a, a] = 0.5
            c[a, iA, a] = -0.5
        for i in range(p, p + q):
            c[iA, i, i] = 1.0
            c[i, iA, i] = -1.0
        return LieAlgebraData(dim=n, structure_constants=c)


def tube_volume_closed_form(p: int, q: int, r: float, l: float) -> float:
    """Volume of the solid tube of radius r about a curve of length l."""
    m = p + q
    return unit_ball_volume(m) * 2.0 ** m * math.sinh(r / 2.0) ** m * math.cosh(r / 2.0) ** q * l


def tube_surface_area(p: int, q: int, r: float, l: float) -> float:
    """Volume of the tubular hypersurface of radius r about a curve of length l."""
    m = p + q
    sh = math.sinh(r / 2.0)
    ch = math.cosh(r / 2.0)
    return (
        unit_ball_volume(m)
        * 2.0 ** (m - 1)
        * (m * sh ** (m - 1) * ch ** (q + 1) + q * sh ** (m + 1) * ch ** (q - 1))
        * l
    )


def euler_arnold_residual(
    space: DamekRicciSpace,
    V: np.ndarray,
    Z: np.ndarray,
    t_samples,
    h: float = 1e-4,
) -> float:
    """Max residual of the left-invariant geodesic equation along the explicit geodesic.

    The velocity is pulled back to the Lie algebra through the group
    multiplication (central differences), and checked against
    xi' = ad(xi)^T xi in the orthonormal algebra basis.
    """
    sconst = space.lie_algebra_data()

    def body_velocity(t: float) -> np.ndarray:
        g = space.geodesic_from_identity(V, Z, t)
        ginv = space.inverse(g)
        fwd = space.multiply(ginv, space.geodesic_from_identity(V, Z, t + h)).coords()
        bwd = space.multiply(ginv, space.geodesic_from_identity(V, Z, t - h)).coords()
        return (fwd - bwd) / (2.0 * h)

    worst = 0.0
    for t in np.asarray(t_samples, dtype=float):
        xi = body_velocity(t)
        xi_dot = (body_velocity(t + h) - body_velocity(t - h)) / (2.0 * h)
        rhs = sconst.ad(xi).T @ xi
        worst = max(worst, float(np.max(np.abs(xi_dot - rhs))))
    return worst
