import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ghpaths.metric import simplex, two_point, validate_metric  # noqa: E402

_CRITERIA = {}


@pytest.fixture(scope="session")
def M3():
    return validate_metric(["1", "2", "3"], [[0, 3, 4], [3, 0, 5], [4, 5, 0]])


@pytest.fixture(scope="session")
def r5():
    return Fraction(1, 5)


@pytest.fixture
def pt2():
    return two_point


@pytest.fixture
def eq():
    return simplex


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and "criterion_" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            name = report.nodeid.split("::")[-1]
            _CRITERIA[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        outcome, duration = _CRITERIA[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
