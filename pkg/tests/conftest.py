import numpy as np
import pytest

from thetachar import enumerate_aronhold_sets
from thetachar.formats import sample_tau


@pytest.fixture(scope="session")
def tau1():
    return sample_tau(1)


@pytest.fixture(scope="session")
def tau2():
    return sample_tau(2)


@pytest.fixture(scope="session")
def aronhold_sets():
    return enumerate_aronhold_sets()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
