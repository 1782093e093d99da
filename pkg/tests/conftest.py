import random

import pytest
from hypothesis import HealthCheck, settings

from rankecp.fields import make_field

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def f16():
    return make_field(2, 4)


@pytest.fixture
def rng():
    return random.Random(12345)
