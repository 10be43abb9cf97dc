"""Lie algebra data, left-invariant curvature via the Koszul formula, and
the complexified ad-power traces used by the rank-two obstruction witness."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import RiemannCurvature, validate_curvature

__all__ = [
    "LieAlgebraData",
    "jacobi_identity_residual",
    "curvature_from_structure_constants",
    "ad_power_trace",
    "ad_power_trace_eigen",
    "so3_structure_constants",
    "so3_so3_symmetric_pair",
]


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants c[i, j, k] of [e_i, e_j] = sum_k c[i,j,k] e_k.

    ``cartan_split`` optionally partitions the basis indices into the
    isotropy block and its orthogonal complement for a symmetric pair.
    """

    dim: int
    structure_constants: np.ndarray
    inner_product: np.ndarray | None = None
    cartan_split: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __post_init__(self):
        c = np.ascontiguousarray(self.structure_constants, dtype=float)
        if c.shape != (self.dim,) * 3:
            raise ValueError("structure constants must have shape (n, n, n)")
        if np.max(np.abs(c + np.swapaxes(c, 0, 1))) > 1e-12:
            raise ValueError("structure constants must be antisymmetric in (i, j)")
        object.__setattr__(self, "structure_constants", c)
        if self.inner_product is not None:
            g = np.asarray(self.inner_product, dtype=float)
            if np.max(np.abs(g - g.T)) > 1e-12 or np.any(np.linalg.eigvalsh(g) <= 0):
                raise ValueError("inner product must be symmetric positive definite")
            object.__setattr__(self, "inner_product", g)

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.structure_constants, x, y)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad(x) acting on column coordinate vectors."""
        return np.einsum("ijk,i->kj", self.structure_constants, x)


def jacobi_identity_residual(L: LieAlgebraData) -> float:
    c = L.structure_constants
    cyc = np.einsum("ijm,mkl->ijkl", c, c)
    total = cyc + np.einsum("ijkl->jkil", cyc) + np.einsum("ijkl->kijl", cyc)
    return float(np.max(np.abs(total)))


def _orthonormal_structure_constants(L: LieAlgebraData) -> np.ndarray:
    """Structure constants rewritten in an orthonormal basis of the metric."""
    if L.inner_product is None:
        return L.structure_constants
    g = L.inner_product
    if np.max(np.abs(g - np.eye(L.dim))) < 1e-14:
        return L.structure_constants
    low = np.linalg.cholesky(g)
    M = np.linalg.inv(low).T  # columns give the orthonormal basis in old coordinates
    Minv = np.linalg.inv(M)
    return np.einsum("ia,jb,ijk,kd->abd", M, M, L.structure_constants, Minv)


def curvature_from_structure_constants(L: LieAlgebraData) -> RiemannCurvature:
    """Curvature at the identity of the left-invariant metric, by the Koszul formula."""
    res = jacobi_identity_residual(L)
    if res > 1e-10:
        raise ValueError(f"Jacobi identity violated (residual {res:g})")
    c = _orthonormal_structure_constants(L)
    # Gamma[i, j, k] = <nabla_{e_i} e_j, e_k>
    gamma = 0.5 * (c - np.einsum("jki->ijk", c) + np.einsum("kij->ijk", c))
    # R(e_i, e_j) e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - nabla_{[e_i, e_j]} e_k
    term1 = np.einsum("jkm,iml->ijkl", gamma, gamma)
    term2 = np.einsum("ikm,jml->ijkl", gamma, gamma)
    term3 = np.einsum("ijm,mkl->ijkl", c, gamma)
    R = RiemannCurvature(dim=L.dim, components=term1 - term2 - term3)
    diag = validate_curvature(R, 1e-10)
    if not diag.passed:
        raise ValueError(f"Koszul curvature failed symmetry check ({diag.max_residual:g})")
    return R


def _complex_ad(L: LieAlgebraData, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    return L.ad(np.asarray(a1, dtype=float)) + 1j * L.ad(np.asarray(a2, dtype=float))


def ad_power_trace(L: LieAlgebraData, a1: np.ndarray, a2: np.ndarray, k: int) -> complex:
    """tr over the complexified non-isotropy block of ad(a1 + i a2)^(2k).

    a1 and a2 must commute; the even power preserves the block even though
    ad itself swaps the two blocks of the symmetric pair.
    """
    if L.cartan_split is None:
        raise ValueError("LieAlgebraData needs a cartan_split")
    if k < 1:
        raise ValueError("k must be a positive integer")
    comm = L.bracket(np.asarray(a1, float), np.asarray(a2, float))
    if np.max(np.abs(comm), initial=0.0) > 1e-12:
        raise ValueError("a1 and a2 must commute")
    p_idx = list(L.cartan_split[1])
    power = np.linalg.matrix_power(_complex_ad(L, a1, a2), 2 * k)
    return complex(np.sum(power[p_idx, p_idx]))


def ad_power_trace_eigen(L: LieAlgebraData, a1: np.ndarray, a2: np.ndarray, k: int) -> complex:
    """Independent value: half the sum of eigenvalue 2k-th powers of ad(a1 + i a2)."""
    eigs = np.linalg.eigvals(_complex_ad(L, a1, a2))
    return complex(0.5 * np.sum(eigs ** (2 * k)))


def so3_structure_constants() -> np.ndarray:
    c = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k] = 1.0
        c[j, i, k] = -1.0
    return c


def so3_so3_symmetric_pair() -> LieAlgebraData:
    """so(3) + so(3) with the product-of-spheres symmetric pair.

    Basis order (L1, L2, L3) per factor; the isotropy block is spanned by the
    two L3 generators, the complement by the four L1, L2 generators.
    """
    c3 = so3_structure_constants()
    c = np.zeros((6, 6, 6))
    c[:3, :3, :3] = c3
    c[3:, 3:, 3:] = c3
    return LieAlgebraData(
        dim=6,
        structure_constants=c,
        cartan_split=((2, 5), (0, 1, 3, 4)),
    )
