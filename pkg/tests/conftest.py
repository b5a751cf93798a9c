import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gridhom import fixtures
from gridhom.generate import random_diagram, random_weighted_diagram

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def weighted_diagrams(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_weighted_diagram(n, random.Random(seed))


@st.composite
def diagrams(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_diagram(n, random.Random(seed))


@pytest.fixture(scope="session")
def shipped():
    return {name: fixtures.load(name) for name in fixtures.names()}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label} {detail}".rstrip())
