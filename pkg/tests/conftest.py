import numpy as np
import pytest
from hypothesis import settings

from fuzzystat import EstimatorConfig

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def cfg():
    return EstimatorConfig()


@pytest.fixture
def small_grid_cfg():
    """Explicit ε grid so small-N results do not depend on the derived grid."""
    return EstimatorConfig(eps_grid=(1.0, 0.1, 0.01))


def brute_count(members, n):
    return sum(1 for k in members if k <= n)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
