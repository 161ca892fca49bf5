import numpy as np
import pytest

from twedband import TimeSeries, TwedParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240511)


def random_series(rng, n=None, d=None, irregular_times=True):
    """A random series; irregular timestamps may start below zero."""
    if n is None:
        n = int(rng.integers(1, 24))
    if d is None:
        d = int(rng.integers(1, 4))
    values = rng.standard_normal((n, d))
    if irregular_times:
        start = rng.uniform(-5.0, 5.0)
        times = start + np.cumsum(rng.uniform(0.05, 2.0, size=n))
    else:
        times = None
    return TimeSeries(values, times)


def params_grid():
    return [
        TwedParams(nu=nu, lam=lam, degree=degree)
        for nu in (0.1, 1.0)
        for lam in (0.0, 0.5, 1.0)
        for degree in (1, 2)
    ]
