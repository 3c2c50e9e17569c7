import matplotlib

matplotlib.use("Agg")

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from zetalab.intervals import build_point_set
from zetalab.numutil import divisor_sieve

settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def divisors():
    return divisor_sieve(10**4)


@pytest.fixture(scope="session")
def small_points():
    """The standard small exercise set: T=1e4, G=20, at most 10 windows."""
    return build_point_set(1e4, 20.0, r_max=10, seed=1)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
