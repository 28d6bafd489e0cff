import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from calsched.core import Instance
from helpers import jobs_of

settings.register_profile("ci", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def third():
    return Fraction(1, 3)


@pytest.fixture
def single_long():
    return Instance(1, 9, jobs_of((0, 4)))


@pytest.fixture
def three_job():
    return Instance(1, 3, jobs_of((0, 2), (0, 2), (5, 8)))
