import numpy as np
import pytest

from qclock import codata2018, natural_units


@pytest.fixture(scope="session")
def si():
    return codata2018()


@pytest.fixture(scope="session")
def nat():
    return natural_units()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
