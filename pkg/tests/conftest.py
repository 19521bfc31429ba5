import math

import numpy as np
import pytest

from spindisk import Mixture, new_colouring


def random_colouring(rng, k):
    """Random valid colouring with exactly k switches."""
    while True:
        theta = np.sort(rng.uniform(1e-3, math.pi - 1e-3, k))
        if k == 0 or np.all(np.diff(theta) > 1e-6):
            return new_colouring(theta.tolist())


def random_mixture(rng, ks=(0, 2, 4), max_components=3):
    """Random mixture with 1..max_components components and sane weights."""
    n = int(rng.integers(1, max_components + 1))
    while True:
        w = rng.dirichlet(np.ones(n))
        if w.min() > 1e-3:
            break
    comps = tuple(
        (float(wi), random_colouring(rng, int(rng.choice(ks)))) for wi in w
    )
    return Mixture(comps)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
