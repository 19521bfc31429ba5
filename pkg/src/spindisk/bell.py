"""CHSH functional for correlation curves.

Sign convention: S = rho(a-b) - rho(a-b') + rho(a'-b) + rho(a'-b').  All
placements of the single minus are equivalent under relabelling; this one
makes the triangle wave reach |S| = 2 at the textbook quadruple
(0, pi/2, pi/4, 3*pi/4).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle import TWO_PI
from .correlation import PiecewiseLinearCorrelation


@dataclass(frozen=True)
class CHSHSettings:
    a: float
    a_prime: float
    b: float
    b_prime: float


def quantum_correlation(gamma):
    """The singlet correlation -cos(gamma); accepts scalars or arrays."""
    return -np.cos(gamma)


def _sample(rho, gammas: np.ndarray) -> np.ndarray:
    if isinstance(rho, PiecewiseLinearCorrelation):
        return rho.sample(gammas)
    return np.asarray(rho(gammas), dtype=float)


def chsh(rho, s: CHSHSettings) -> float:
    """Evaluate the CHSH combination for an evaluable correlation."""
    gammas = np.remainder(
        np.array([s.a - s.b, s.a - s.b_prime, s.a_prime - s.b, s.a_prime - s.b_prime]),
        TWO_PI,
    )
    r = _sample(rho, gammas)
    return float(r[0] - r[1] + r[2] + r[3])


def chsh_scan(rho, grid_step: float = math.pi / 90) -> tuple[float, CHSHSettings]:
    """Maximise |S| over a uniform setting grid.

    Rotation invariance of rho fixes a = 0, and for fixed a' the slice
    S(b, b') separates into a sum of one-dimensional terms, so the scan is
    O(n^2) overall.  Ties resolve to the lexicographically smallest
    (a', b, b') grid indices.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    n = max(1, round(TWO_PI / grid_step))
    grid = np.arange(n) * (TWO_PI / n)
    r = _sample(rho, grid)

    idx = np.arange(n)
    t1 = r[(-idx) % n]  # rho(a - b) with a = 0
    t2 = r[(-idx) % n]  # rho(a - b'), carries the minus sign

    best = -math.inf
    best_settings = (0, 0, 0)
    for ia in range(n):
        m = r[(ia - idx) % n]
        u = t1 + m       # b-dependent part of S
        v = m - t2       # b'-dependent part
        hi = float(u.max() + v.max())
        lo = float(u.min() + v.min())
        if hi >= -lo:
            val, ib, ibp = hi, int(u.argmax()), int(v.argmax())
        else:
            val, ib, ibp = -lo, int(u.argmin()), int(v.argmin())
        if val > best:
            best = val
            best_settings = (ia, ib, ibp)

    ia, ib, ibp = best_settings
    return best, CHSHSettings(0.0, grid[ia], grid[ib], grid[ibp])
