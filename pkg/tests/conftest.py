import functools

import pytest
from hypothesis import HealthCheck, settings

from gradedflag import catalog

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def entry(name):
    return catalog.by_name(name)


@pytest.fixture
def sl2():
    return entry("sl2")


@pytest.fixture
def gl11():
    return entry("gl(1,1)")


@pytest.fixture
def gl22():
    return entry("gl(2,2)")


@pytest.fixture
def gl211():
    return entry("gl(2,1,1)")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
