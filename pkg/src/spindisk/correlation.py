"""Exact correlation functions of disk colourings.

The correlation at separation gamma is rho(gamma) = 2 * Pr(opposite
colours at distance gamma) - 1 under a uniform random rotation.  For a
finite-switch colouring this is piecewise linear in gamma, with kinks
exactly at the pairwise differences of the colour-switch angles, so it can
be represented and integrated in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle import (
    ANGLE_TOL,
    PI,
    TWO_PI,
    Colouring,
    Mixture,
    as_mixture,
    full_switch_set,
)


def _dedupe_sorted(a: np.ndarray, tol: float = ANGLE_TOL) -> np.ndarray:
    """Drop near-duplicate entries from a sorted array."""
    if a.size == 0:
        return a
    keep = np.concatenate(([True], np.diff(a) > tol))
    return a[keep]


@dataclass(frozen=True)
class PiecewiseLinearCorrelation:
    """rho(gamma) as linear interpolation between breakpoints on [0, 2*pi).

    breakpoints[0] is always 0; the function wraps periodically, so the
    last piece runs from breakpoints[-1] back to the value at 0.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def _extended(self) -> tuple[np.ndarray, np.ndarray]:
        bp = np.append(self.breakpoints, TWO_PI)
        val = np.append(self.values, self.values[0])
        return bp, val

    def sample(self, gammas) -> np.ndarray:
        """Evaluate at an array of angles (reduced mod 2*pi)."""
        g = np.remainder(np.asarray(gammas, dtype=float), TWO_PI)
        g[g >= TWO_PI] = 0.0
        bp, val = self._extended()
        return np.interp(g, bp, val)

    def evaluate(self, gamma: float) -> float:
        """Evaluate at a single angle."""
        return float(self.sample(np.array([gamma]))[0])

    def pieces(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Per-piece (g0, g1, slope, intercept) arrays covering [0, 2*pi]."""
        bp, val = self._extended()
        g0, g1 = bp[:-1], bp[1:]
        slope = (val[1:] - val[:-1]) / (g1 - g0)
        intercept = val[:-1] - slope * g0
        return g0, g1, slope, intercept


def exact_correlation(c: Colouring) -> PiecewiseLinearCorrelation:
    """Exact rho for a single colouring via interval-overlap arithmetic.

    The opposite-colour measure m(gamma) is a sum of circular overlaps of
    constant-colour arcs, hence piecewise linear between the pairwise
    differences (mod 2*pi) of the 2k+2 switch angles.  rho = m/pi - 1.
    """
    f = np.array(full_switch_set(c))
    n = f.size
    diffs = np.remainder((f[:, None] - f[None, :]).ravel(), TWO_PI)
    diffs = diffs[diffs < TWO_PI - ANGLE_TOL]
    bps = _dedupe_sorted(np.sort(np.concatenate(([0.0], diffs))))

    starts = f
    ends = np.append(f[1:], TWO_PI)
    colours = 1 - 2 * (np.arange(n) % 2)

    opp_i, opp_j = np.nonzero(colours[:, None] != colours[None, :])
    ai = starts[opp_i][:, None]
    bi = ends[opp_i][:, None]
    aj = starts[opp_j][:, None]
    bj = ends[opp_j][:, None]

    m = np.zeros(bps.size)
    for shift in (-TWO_PI, 0.0, TWO_PI):
        lo = np.maximum(ai, aj - bps[None, :] + shift)
        hi = np.minimum(bi, bj - bps[None, :] + shift)
        m += np.clip(hi - lo, 0.0, None).sum(axis=0)

    values = np.clip(m / PI - 1.0, -1.0, 1.0)
    return PiecewiseLinearCorrelation(bps, values)


def mixture_correlation(m: Mixture | Colouring) -> PiecewiseLinearCorrelation:
    """Weighted average of component correlations, exact on the union grid."""
    mix = as_mixture(m)
    comps = [(w, exact_correlation(c)) for w, c in mix.components]
    bps = _dedupe_sorted(np.sort(np.concatenate([pl.breakpoints for _, pl in comps])))
    values = np.zeros(bps.size)
    for w, pl in comps:
        values += w * pl.sample(bps)
    return PiecewiseLinearCorrelation(bps, np.clip(values, -1.0, 1.0))


def _merge_grids(p: PiecewiseLinearCorrelation, q: PiecewiseLinearCorrelation) -> np.ndarray:
    return _dedupe_sorted(np.sort(np.concatenate([p.breakpoints, q.breakpoints])))


def inner_product(p: PiecewiseLinearCorrelation, q: PiecewiseLinearCorrelation) -> float:
    """(1/2*pi) * integral of p*q over one period, exact per linear piece."""
    bp = np.append(_merge_grids(p, q), TWO_PI)
    vp = p.sample(bp)
    vq = q.sample(bp)
    g0, g1 = bp[:-1], bp[1:]
    dg = g1 - g0
    a1 = (vp[1:] - vp[:-1]) / dg
    b1 = vp[:-1] - a1 * g0
    a2 = (vq[1:] - vq[:-1]) / dg
    b2 = vq[:-1] - a2 * g0
    # integral of (a1*g + b1)(a2*g + b2) piece by piece
    c2 = a1 * a2
    c1 = a1 * b2 + a2 * b1
    c0 = b1 * b2
    total = np.sum(
        c2 * (g1**3 - g0**3) / 3.0 + c1 * (g1**2 - g0**2) / 2.0 + c0 * dg
    )
    return float(total / TWO_PI)


def cosine_inner_product(p: PiecewiseLinearCorrelation) -> float:
    """(1/2*pi) * integral of p(gamma)*cos(gamma), exact per linear piece."""
    g0, g1, a, b = p.pieces()
    # antiderivative of (a*g + b)*cos g is (a*g + b)*sin g + a*cos g
    upper = (a * g1 + b) * np.sin(g1) + a * np.cos(g1)
    lower = (a * g0 + b) * np.sin(g0) + a * np.cos(g0)
    return float(np.sum(upper - lower) / TWO_PI)


def l2_distance_to_cosine(p: PiecewiseLinearCorrelation) -> float:
    """L2 distance D with D^2 = (1/2*pi) * integral of (rho + cos)^2."""
    d2 = inner_product(p, p) + 2.0 * cosine_inner_product(p) + 0.5
    return math.sqrt(max(d2, 0.0))


def sup_distance_to_cosine(p: PiecewiseLinearCorrelation) -> float:
    """max over gamma of |rho(gamma) + cos(gamma)|, exact per piece.

    On each piece h(g) = a*g + b + cos g is stationary where sin g = a, so
    the maximum is attained at a piece endpoint or such a root.
    """
    g0, g1, a, b = p.pieces()
    base = np.arcsin(np.clip(a, -1.0, 1.0))
    cands = [g0, g1]
    for root in (base, PI - base):
        for shift in (-TWO_PI, 0.0, TWO_PI):
            cands.append(root + shift)
    cand = np.stack(cands, axis=1)  # (pieces, candidates)
    inside = (cand >= g0[:, None]) & (cand <= g1[:, None]) & (np.abs(a) <= 1.0)[:, None]
    inside[:, :2] = True  # endpoints always count
    h = np.abs(a[:, None] * cand + b[:, None] + np.cos(cand))
    h[~inside] = 0.0
    return float(h.max())


def check_invariants(p: PiecewiseLinearCorrelation, tol: float = 1e-12, grid: int = 1000) -> None:
    """Raise AssertionError unless p satisfies the model-class invariants.

    Checks bounds, the certainty relations rho(0) = -1 and rho(pi) = +1,
    evenness and antiperiodicity on a grid.
    """
    assert np.all(p.values <= 1.0 + tol) and np.all(p.values >= -1.0 - tol)
    assert abs(p.evaluate(0.0) + 1.0) <= tol
    assert abs(p.evaluate(PI) - 1.0) <= tol
    g = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    v = p.sample(g)
    assert np.max(np.abs(v - p.sample(TWO_PI - g))) <= tol
    assert np.max(np.abs(p.sample(g + PI) + v)) <= tol
