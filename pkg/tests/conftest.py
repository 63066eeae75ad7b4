import os

import gmpy2
import pytest
from hypothesis import HealthCheck, settings

from pseudofield import InstanceDescriptor, Mode, make_instance

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "100")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def q(*args):
    """Exact rational shorthand: q(3, 5), q("2.5"), q(7)."""
    return gmpy2.mpq(*args)


def inst_of(kind, n=None, mode=Mode.FLOAT):
    return make_instance(InstanceDescriptor(kind, n, mode))


@pytest.fixture
def affine_q():
    return inst_of("affine2", mode=Mode.RATIONAL)


@pytest.fixture
def affine_f():
    return inst_of("affine2")


@pytest.fixture
def moebius_q():
    return inst_of("moebius3", mode=Mode.RATIONAL)


@pytest.fixture
def moebius_f():
    return inst_of("moebius3")
