import time

import pytest

from intcomplexity.bounds import SpfSieve
from intcomplexity.core import ComputeMode, compute_table

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    # a failing fixture counts against the criterion too
    if report.when == "call" or report.failed:
        number, title = marker.args
        _CRITERIA.setdefault(number, (title, "passed"))
        if report.when == "call" or _CRITERIA[number][1] == "passed":
            _CRITERIA[number] = (title, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcome = _CRITERIA[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{number:02d} {verdict}  {title}")


@pytest.fixture(scope="session")
def big_build():
    """The 200000 table with its build time."""
    start = time.perf_counter()
    table = compute_table(200_000, ComputeMode.PRUNED)
    return table, time.perf_counter() - start


@pytest.fixture(scope="session")
def big(big_build):
    return big_build[0]


@pytest.fixture(scope="session")
def big_sieve():
    return SpfSieve(200_000)


@pytest.fixture(scope="session")
def t5000():
    return compute_table(5000)


@pytest.fixture(scope="session")
def t20():
    return compute_table(20)
