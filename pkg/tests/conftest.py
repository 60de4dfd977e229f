import pytest
from hypothesis import HealthCheck, settings

from msolift.config import reset_settings
from msolift.core.structures import Graph
from tests.graphs import complete, cycle, diamond, path, star

settings.register_profile(
    "msolift",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("msolift")


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def p3() -> Graph:
    return path(3)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def k4_minus_edge() -> Graph:
    return diamond()


@pytest.fixture
def claw() -> Graph:
    return star(3)
