"""Shared fixtures: random proper input distributions and channel draws."""

from itertools import product

import numpy as np
import pytest

from signrate import DiscreteInputDistribution


def make_random_proper(rng, dim, k=3):
    """Random proper discrete distribution on C^dim with nonzero mean.

    Each component takes k x k independent real/imaginary values; the
    imaginary marginal is rescaled so its variance matches the real one,
    which zeroes the pseudo-covariance while keeping means and higher
    moments generic.
    """
    grids = []
    for _ in range(dim):
        ar = rng.normal(0.5, 1.0, k)
        pr = rng.dirichlet(np.ones(k))
        ai = rng.normal(-0.3, 1.0, k)
        pi_ = rng.dirichlet(np.ones(k))
        mi = pi_ @ ai
        vr = pr @ ar**2 - (pr @ ar) ** 2
        vi = pi_ @ ai**2 - mi**2
        ai = mi + (ai - mi) * np.sqrt(vr / vi)
        vals = (ar[:, None] + 1j * ai[None, :]).ravel()
        ps = (pr[:, None] * pi_[None, :]).ravel()
        grids.append((vals, ps))
    support, plist = [], []
    for combo in product(*[range(len(g[0])) for g in grids]):
        support.append([grids[j][0][c] for j, c in enumerate(combo)])
        plist.append(np.prod([grids[j][1][c] for j, c in enumerate(combo)]))
    return DiscreteInputDistribution(support, plist)


def random_cn_channel(rng, n_rx, n_tx):
    """CN(0,1)-entry channel draw."""
    return rng.normal(0.0, np.sqrt(0.5), (n_rx, n_tx)) + 1j * rng.normal(
        0.0, np.sqrt(0.5), (n_rx, n_tx)
    )


@pytest.fixture
def random_proper():
    return make_random_proper


@pytest.fixture
def cn_channel():
    return random_cn_channel
