import numpy as np
import pytest

from modpair.numgrid import GridSpec


@pytest.fixture(scope="session")
def grid2k():
    return GridSpec(30.0, 2048)


@pytest.fixture(scope="session")
def grid4k():
    return GridSpec(30.0, 4096)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
