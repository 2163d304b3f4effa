import math

import pytest

from dtws import FlatnessParams, default_shapelet_set


@pytest.fixture(scope="session")
def default_set():
    sset, _ = default_shapelet_set()
    return sset


@pytest.fixture(scope="session")
def ln10_params():
    return FlatnessParams(m0=0.0, beta=math.log(10.0))
