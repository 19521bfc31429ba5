"""Monte Carlo simulation of the two-station experiment.

The classical simulator draws a colouring component, spins the disk by a
uniform rotation u and reads off a = colour(alpha - u), b = -colour(beta - u):
each outcome depends only on the shared (component, rotation) pair and the
local setting.  The quantum simulator samples the four-cell joint law
Pr(++) = Pr(--) = (1 - cos(alpha-beta))/4, Pr(+-) = Pr(-+) = (1 + cos)/4.

All randomness flows from numpy SeedSequence, so results are reproducible
per (seed, shard index) regardless of scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circle import TWO_PI, Colouring, Mixture, as_mixture, full_switch_set


class InvalidSampler(ValueError):
    """Setting sampler has an empty setting set."""


@dataclass(frozen=True)
class RunRecord:
    alpha: float
    beta: float
    a: int
    b: int


@dataclass
class CountTable:
    """Outcome counts per setting pair: [n++, n+-, n-+, n--]."""

    counts: dict[tuple[float, float], np.ndarray] = field(default_factory=dict)

    def add(self, alpha: float, beta: float, cells: np.ndarray) -> None:
        key = (alpha, beta)
        if key in self.counts:
            self.counts[key] = self.counts[key] + cells
        else:
            self.counts[key] = cells.astype(np.int64)

    def merge(self, other: "CountTable") -> None:
        for (alpha, beta), cells in other.counts.items():
            self.add(alpha, beta, cells)

    def n_runs(self) -> int:
        return int(sum(c.sum() for c in self.counts.values()))

    def pairs(self) -> list[tuple[float, float]]:
        return sorted(self.counts)


class FixedPairSampler:
    """Every run uses the same (alpha, beta)."""

    def __init__(self, alpha: float, beta: float):
        self.alpha = float(alpha)
        self.beta = float(beta)

    def draw(self, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return np.full(n, self.alpha), np.full(n, self.beta)


class GridSampler:
    """Settings drawn uniformly from a finite list of pairs."""

    def __init__(self, pairs: list[tuple[float, float]]):
        if not pairs:
            raise InvalidSampler("setting grid is empty")
        self.pairs = [(float(a), float(b)) for a, b in pairs]

    def draw(self, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        idx = rng.integers(len(self.pairs), size=n)
        arr = np.array(self.pairs)
        return arr[idx, 0], arr[idx, 1]


class UniformSampler:
    """Independent uniform settings on [0, 2*pi) for both stations."""

    def draw(self, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return rng.uniform(0.0, TWO_PI, n), rng.uniform(0.0, TWO_PI, n)


def _colours_at(c: Colouring, x: np.ndarray) -> np.ndarray:
    """Vectorised right-continuous colour lookup."""
    f = np.array(full_switch_set(c))
    idx = np.searchsorted(f, np.remainder(x, TWO_PI), side="right") - 1
    return 1 - 2 * (idx & 1)


def classical_outcomes(
    model: Mixture | Colouring,
    alphas: np.ndarray,
    betas: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised classical runs; returns (a, b) arrays of +-1."""
    mix = as_mixture(model)
    n = alphas.size
    u = rng.uniform(0.0, TWO_PI, n)
    if len(mix.components) == 1:
        comp_idx = np.zeros(n, dtype=int)
    else:
        weights = np.array([w for w, _ in mix.components])
        comp_idx = rng.choice(len(mix.components), size=n, p=weights / weights.sum())
    a = np.empty(n, dtype=np.int64)
    b = np.empty(n, dtype=np.int64)
    for ci, (_, c) in enumerate(mix.components):
        sel = comp_idx == ci
        if not np.any(sel):
            continue
        a[sel] = _colours_at(c, alphas[sel] - u[sel])
        b[sel] = -_colours_at(c, betas[sel] - u[sel])
    return a, b


def quantum_outcomes(
    alphas: np.ndarray, betas: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised samples from the four-cell singlet law."""
    n = alphas.size
    a = rng.choice(np.array([1, -1]), size=n)
    p_equal = 0.5 * (1.0 - np.cos(alphas - betas))
    b = np.where(rng.random(n) < p_equal, a, -a)
    return a, b


def classical_run(
    model: Mixture | Colouring, alpha: float, beta: float, rng: np.random.Generator
) -> RunRecord:
    """One classical run at fixed settings."""
    a, b = classical_outcomes(model, np.array([alpha]), np.array([beta]), rng)
    return RunRecord(alpha, beta, int(a[0]), int(b[0]))


def quantum_run(alpha: float, beta: float, rng: np.random.Generator) -> RunRecord:
    """One quantum run at fixed settings."""
    a, b = quantum_outcomes(np.array([alpha]), np.array([beta]), rng)
    return RunRecord(alpha, beta, int(a[0]), int(b[0]))


def _tabulate(alphas, betas, a, b) -> CountTable:
    cells = (a < 0) * 2 + (b < 0)  # 0:++ 1:+- 2:-+ 3:--
    settings = np.stack([alphas, betas], axis=1)
    uniq, inverse = np.unique(settings, axis=0, return_inverse=True)
    table = CountTable()
    for i, (alpha, beta) in enumerate(uniq):
        sel = inverse == i
        counts = np.bincount(cells[sel], minlength=4)
        table.add(float(alpha), float(beta), counts)
    return table


def run_experiment(
    model: Mixture | Colouring | None = None,
    *,
    quantum: bool = False,
    sampler,
    n_runs: int,
    seed: int = 0,
    n_shards: int = 1,
) -> CountTable:
    """Run independent trials and aggregate outcome counts per setting pair.

    Deterministic given (seed, n_shards); shard streams come from
    SeedSequence.spawn so merging is order-independent.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    if quantum == (model is not None):
        raise ValueError("pass exactly one of model= or quantum=True")
    children = np.random.SeedSequence(seed).spawn(n_shards)
    per_shard = [n_runs // n_shards] * n_shards
    per_shard[-1] += n_runs - sum(per_shard)
    table = CountTable()
    for child, size in zip(children, per_shard):
        if size == 0:
            continue
        rng = np.random.default_rng(child)
        alphas, betas = sampler.draw(size, rng)
        if quantum:
            a, b = quantum_outcomes(alphas, betas, rng)
        else:
            a, b = classical_outcomes(model, alphas, betas, rng)
        table.merge(_tabulate(alphas, betas, a, b))
    return table


def empirical_correlation(table: CountTable) -> dict[tuple[float, float], tuple[float, float]]:
    """Per setting pair: (correlation estimate, standard error)."""
    out = {}
    for key, cells in table.counts.items():
        npp, npm, nmp, nmm = (int(x) for x in cells)
        n = npp + npm + nmp + nmm
        est = (npp + nmm - npm - nmp) / n
        se = math.sqrt(max(1.0 - est * est, 0.0) / n)
        out[key] = (est, se)
    return out
