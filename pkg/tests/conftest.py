from __future__ import annotations

import pytest

from tckit.census import census
from tckit.verify import GraphFacts

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    passed = report.passed and _CRITERIA.get(number, (title, True))[1]
    _CRITERIA[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def connected_census():
    """Connected multigraphs with at most 4 vertices and 6 edges, at most 3
    loops per vertex and 3 edges per pair."""
    return census(4, 6, connected=True, loop_cap=3, parallel_cap=3)


@pytest.fixture(scope="session")
def census_facts(connected_census):
    return [GraphFacts(g) for g in connected_census]


@pytest.fixture(scope="session")
def wide_census_facts():
    """As the connected census but with up to 7 edges, where some smooth
    decompositions carry two fat cells."""
    return [GraphFacts(g) for g in census(4, 7, connected=True, loop_cap=3, parallel_cap=3)]
