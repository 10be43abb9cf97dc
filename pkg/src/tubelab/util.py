"""Deterministic low-discrepancy samples.

No RNG anywhere in the package: sample sets come from additive (Weyl)
sequences with square-root irrationals, so every run produces identical
numbers on every platform.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["weyl_samples", "unit_vectors", "orthogonal_pairs"]

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]


def weyl_samples(count: int, dim: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """(count, dim) array of equidistributed points in [lo, hi)."""
    if dim > len(_PRIMES):
        raise ValueError(f"dim > {len(_PRIMES)} not supported")
    alphas = np.array([math.sqrt(p) % 1.0 for p in _PRIMES[:dim]])
    k = np.arange(1, count + 1)[:, None]
    frac = (k * alphas) % 1.0
    return lo + (hi - lo) * frac


def unit_vectors(count: int, dim: int) -> np.ndarray:
    """Deterministic well-spread unit vectors."""
    raw = weyl_samples(count, dim)
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    if np.any(norms < 1e-6):
        raise ValueError("degenerate sample; increase count offset")
    return raw / norms


def orthogonal_pairs(count: int, dim: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic (u, v) pairs with u, v unit and v orthogonal to u."""
    us = unit_vectors(count, dim)
    vs_raw = weyl_samples(count, dim, 0.0, 1.0) + 0.1
    pairs = []
    for u, v in zip(us, vs_raw):
        w = v - np.dot(v, u) * u
        nw = np.linalg.norm(w)
        if nw < 1e-8:
            raise ValueError("degenerate orthogonal complement sample")
        pairs.append((u, w / nw))
    return pairs
