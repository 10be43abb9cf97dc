"""Built-in curvature tensors: space forms, the two complex rank-one models,
and products, plus a small name parser for command-line selection."""

from __future__ import annotations

import re

import numpy as np

from .curvature import RiemannCurvature
from .damek_ricci import DamekRicciSpace, build_heisenberg
from .lie import curvature_from_structure_constants

__all__ = [
    "euclidean",
    "sphere",
    "hyperbolic",
    "cp2",
    "ch2",
    "product",
    "get_space",
    "catalog_names",
]


def euclidean(n: int) -> RiemannCurvature:
    return RiemannCurvature(dim=n, components=np.zeros((n, n, n, n)))


def sphere(n: int, kappa: float = 1.0) -> RiemannCurvature:
    """Constant sectional curvature kappa; kappa < 0 gives the hyperbolic model."""
    eye = np.eye(n)
    comps = kappa * (
        np.einsum("jk,il->ijkl", eye, eye) - np.einsum("ik,jl->ijkl", eye, eye)
    )
    return RiemannCurvature(dim=n, components=comps)


def hyperbolic(n: int, kappa: float = -1.0) -> RiemannCurvature:
    if kappa >= 0:
        raise ValueError("hyperbolic space needs kappa < 0")
    return sphere(n, kappa)


def _complex_structure(n: int) -> np.ndarray:
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.kron(np.eye(n // 2), rot)


def cp2() -> RiemannCurvature:
    """Complex projective plane, holomorphic sectional curvature 4."""
    n = 4
    eye = np.eye(n)
    J = _complex_structure(n)
    A = J.T  # A[a, b] = <J e_a, e_b>
    comps = (
        np.einsum("jk,il->ijkl", eye, eye)
        - np.einsum("ik,jl->ijkl", eye, eye)
        + np.einsum("jk,il->ijkl", A, A)
        - np.einsum("ik,jl->ijkl", A, A)
        - 2.0 * np.einsum("ij,kl->ijkl", A, A)
    )
    return RiemannCurvature(dim=n, components=comps)


def ch2() -> RiemannCurvature:
    """Complex hyperbolic plane: curvature at the identity of the solvable
    group model with parameters (p, q) = (2, 1); sectional range [-1, -1/4]."""
    space = DamekRicciSpace(build_heisenberg(2, 1))
    return curvature_from_structure_constants(space.lie_algebra_data())


def product(R1: RiemannCurvature, R2: RiemannCurvature) -> RiemannCurvature:
    """Direct-sum curvature of a Riemannian product (cross terms vanish)."""
    n1, n2 = R1.dim, R2.dim
    n = n1 + n2
    comps = np.zeros((n, n, n, n))
    comps[:n1, :n1, :n1, :n1] = R1.components
    comps[n1:, n1:, n1:, n1:] = R2.components
    return RiemannCurvature(dim=n, components=comps)


def catalog_names() -> list[str]:
    return ["e<n>", "s<n>", "h<n>", "cp2", "ch2", "s2xs2"]


def get_space(name: str) -> RiemannCurvature:
    """Parse names like e3, r3, s4, h7, cp2, ch2, s2xs2."""
    key = name.strip().lower()
    if key == "cp2":
        return cp2()
    if key == "ch2":
        return ch2()
    if key == "s2xs2":
        return product(sphere(2), sphere(2))
    m = re.fullmatch(r"(e|r|s|h)(\d+)", key)
    if m is None:
        raise ValueError(f"unknown space {name!r}; known: {', '.join(catalog_names())}")
    kind, n = m.group(1), int(m.group(2))
    if n < 2 or n > 16:
        raise ValueError("dimension must be in [2, 16]")
    if kind in ("e", "r"):
        return euclidean(n)
    if kind == "s":
        return sphere(n)
    return hyperbolic(n)
