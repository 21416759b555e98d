import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qdouble.group_core import builtin_group

settings.register_profile("qdouble", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qdouble")

SMALL_GROUPS = ("z2", "z3", "s3")


@pytest.fixture(scope="session")
def groups():
    return {name: builtin_group(name) for name in ("z2", "z3", "z4", "s3", "d4", "q8")}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
