from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from nilverify.config import load_config

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}
PROPERTY_RESULTS: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    # the acceptance gate reads the outcomes of the property suites, so it runs last
    items.sort(key=lambda item: item.nodeid.startswith("tests/test_acceptance.py") or
               item.fspath.basename == "test_acceptance.py")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_properties.py::" in report.nodeid:
        PROPERTY_RESULTS[report.nodeid.split("::")[-1]] = report.outcome


@pytest.fixture(scope="session")
def heis():
    return load_config("heisenberg-z6.cfg")


@pytest.fixture(scope="session")
def torus():
    return load_config("torus-z6.cfg")


@pytest.fixture(scope="session")
def trivial():
    return load_config("heisenberg-trivial.cfg")


@pytest.fixture(scope="session")
def field(heis):
    return heis.field


@pytest.fixture(scope="session")
def gens(heis):
    return heis.gens


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
