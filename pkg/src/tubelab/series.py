"""Bernoulli numbers, cotangent-series coefficients and branch-extended
trigonometric kernels.

The kernels ``sinc_sqrt`` and ``cotc_sqrt`` evaluate sin(sqrt(lam)*rho)/(sqrt(lam)*rho)
and sqrt(lam)*rho*cot(sqrt(lam)*rho) for a real eigenvalue ``lam`` of either
sign; negative eigenvalues switch to the hyperbolic branch and the zero
eigenvalue is handled by a short Maclaurin series.  Both functions are the
spectral building blocks for Jacobi-field determinants along geodesics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "PoleGuardError",
    "SeriesConvergenceError",
    "CotCoefficients",
    "bernoulli_numbers",
    "cot_coeffs",
    "sinc_sqrt",
    "cotc_sqrt",
    "sinc_sqrt_array",
    "cotc_sqrt_array",
    "MatrixTrig",
    "matrix_trig",
    "log_det_sinc_series",
]

# |b_k| = 2*zeta(2k)/pi^(2k) <= _BK_BOUND / pi^(2k); used for tail bounds.
_BK_BOUND = 4.0

# Below this value of |lam|*rho^2 the closed-form kernels lose digits to
# cancellation and we switch to a 4-term Maclaurin series.
_TINY_ARG = 1e-14

_POLE_MARGIN = 1e-9


class PoleGuardError(ValueError):
    """Argument too close to (or beyond) the first pole/zero at sqrt(lam)*rho = pi."""


class SeriesConvergenceError(RuntimeError):
    """Requested tolerance unreachable within the allowed series order."""


def bernoulli_numbers(m: int) -> list[Fraction]:
    """Exact rationals B_0..B_m from sum_j C(m+1, j) B_j = 0 (B_1 = -1/2)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 64:
        raise ValueError("m > 64 not supported (rational arithmetic blow-up)")
    bern = [Fraction(1)]
    for k in range(1, m + 1):
        acc = Fraction(0)
        for j in range(k):
            acc += math.comb(k + 1, j) * bern[j]
        bern.append(-acc / (k + 1))
    return bern


@dataclass(frozen=True)
class CotCoefficients:
    """Maclaurin coefficients of x*cot(x) = sum_k b_k x^(2k): exact and float."""

    order: int
    values: tuple[Fraction, ...]

    @property
    def floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def __post_init__(self):
        if self.values[0] != 1:
            raise ValueError("b_0 must be 1")
        if any(v >= 0 for v in self.values[1:]):
            raise ValueError("b_k must be negative for k >= 1")


@lru_cache(maxsize=None)
def cot_coeffs(order: int) -> CotCoefficients:
    """b_0 = 1 and b_k = (-4)^k B_{2k} / (2k)! for k = 1..order, exactly."""
    if order > 30:
        raise ValueError("order > 30 not supported")
    bern = bernoulli_numbers(2 * order)
    vals = [Fraction(1)]
    for k in range(1, order + 1):
        vals.append(Fraction((-4) ** k) * bern[2 * k] / math.factorial(2 * k))
    return CotCoefficients(order=order, values=tuple(vals))


def sinc_sqrt(lam: float, rho: float) -> float:
    """sin(sqrt(lam)*rho)/(sqrt(lam)*rho), hyperbolic for lam < 0, 1 at lam = 0."""
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    z = lam * rho * rho
    if abs(z) < _TINY_ARG:
        return 1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0
    if lam > 0.0:
        x = math.sqrt(lam) * rho
        if x >= math.pi:
            raise PoleGuardError(f"sqrt(lam)*rho = {x:.6g} >= pi")
        return math.sin(x) / x
    x = math.sqrt(-lam) * rho
    return math.sinh(x) / x


def cotc_sqrt(lam: float, rho: float) -> float:
    """sqrt(lam)*rho*cot(sqrt(lam)*rho) with the same branch extension."""
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    z = lam * rho * rho
    if abs(z) < _TINY_ARG:
        return 1.0 - z / 3.0 - z * z / 45.0 - 2.0 * z ** 3 / 945.0
    if lam > 0.0:
        x = math.sqrt(lam) * rho
        if x >= math.pi - _POLE_MARGIN:
            raise PoleGuardError(f"sqrt(lam)*rho = {x:.6g} within {_POLE_MARGIN} of pi")
        return x / math.tan(x)
    x = math.sqrt(-lam) * rho
    return x / math.tanh(x)


def sinc_sqrt_array(lam: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Vectorized ``sinc_sqrt`` over z = lam*rho^2 given elementwise (broadcast first)."""
    z = np.asarray(lam, dtype=float) * np.asarray(rho, dtype=float) ** 2
    out = np.empty_like(z)
    tiny = np.abs(z) < _TINY_ARG
    pos = (z > 0) & ~tiny
    neg = (z < 0) & ~tiny
    zt = z[tiny]
    out[tiny] = 1.0 - zt / 6.0 + zt * zt / 120.0 - zt ** 3 / 5040.0
    xp = np.sqrt(z[pos])
    if xp.size and xp.max() >= math.pi:
        raise PoleGuardError("sqrt(lam)*rho >= pi in array evaluation")
    out[pos] = np.sin(xp) / xp
    xn = np.sqrt(-z[neg])
    out[neg] = np.sinh(xn) / xn
    return out


def cotc_sqrt_array(lam: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Vectorized ``cotc_sqrt`` over elementwise lam, rho (broadcast first)."""
    z = np.asarray(lam, dtype=float) * np.asarray(rho, dtype=float) ** 2
    out = np.empty_like(z)
    tiny = np.abs(z) < _TINY_ARG
    pos = (z > 0) & ~tiny
    neg = (z < 0) & ~tiny
    zt = z[tiny]
    out[tiny] = 1.0 - zt / 3.0 - zt * zt / 45.0 - 2.0 * zt ** 3 / 945.0
    xp = np.sqrt(z[pos])
    if xp.size and xp.max() >= math.pi - _POLE_MARGIN:
        raise PoleGuardError("sqrt(lam)*rho too close to pi in array evaluation")
    out[pos] = xp / np.tan(xp)
    xn = np.sqrt(-z[neg])
    out[neg] = xn / np.tanh(xn)
    return out


@dataclass(frozen=True)
class MatrixTrig:
    """Spectral functional calculus of a Jacobi operator at one radius."""

    rho: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns are eigenvectors
    det_sinc: float

    def cot_quadratic(self, v: np.ndarray) -> float:
        """<sqrt(Ru) cot(sqrt(Ru) rho) v, v> via the eigenbasis."""
        coeffs = self.eigenvectors.T @ np.asarray(v, dtype=float)
        kernel = np.array([cotc_sqrt(lam, self.rho) for lam in self.eigenvalues])
        return float(np.sum(kernel / self.rho * coeffs ** 2))


def matrix_trig(Ru, rho: float) -> MatrixTrig:
    """Determinant and cotangent quadratic form of a Jacobi operator at radius rho."""
    lam = Ru.eigenvalues
    det = 1.0
    for lv in lam:
        det *= sinc_sqrt(lv, rho)
    return MatrixTrig(rho=rho, eigenvalues=lam, eigenvectors=Ru.eigenvectors, det_sinc=det)


def log_det_sinc_series(power_sums, rho: float, order: int) -> tuple[float, float]:
    """det(sin(sqrt(Ru) rho)/(sqrt(Ru) rho)) from exp(sum_k (b_k/2k) S_k rho^(2k)).

    ``power_sums`` lists S_1..S_order.  Returns (value, tail_bound), the bound
    coming from |b_k| <= 4/pi^(2k) and |S_k| <= S_2 * mu^(k-2) with
    mu <= sqrt(S_2).
    """
    S = np.asarray(power_sums, dtype=float)
    if len(S) < order:
        raise ValueError("need power sums S_1..S_order")
    if len(S) >= 2 and S[1] < -1e-12:
        raise ValueError("S_2 must be nonnegative for a symmetric operator")
    s2 = max(float(S[1]), 0.0) if len(S) >= 2 else float(S[0]) ** 2
    mu = math.sqrt(s2)
    if mu * rho ** 2 >= 6.25:  # sqrt(max|lam|)*rho <= 2.5 with mu >= max|lam|
        raise PoleGuardError("spectral radius bound sqrt(mu)*rho > 2.5")
    b = cot_coeffs(order).floats
    k = np.arange(1, order + 1)
    log_val = float(np.sum(b[1:] / (2 * k) * S[:order] * rho ** (2 * k)))
    value = math.exp(log_val)
    if mu == 0.0:
        return value, 0.0
    q = mu * rho ** 2 / math.pi ** 2
    tail_log = (_BK_BOUND / 2.0) * (s2 / mu ** 2) / (order + 1) * q ** (order + 1) / (1.0 - q)
    return value, value * math.expm1(tail_log)
