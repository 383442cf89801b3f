"""Shared fixtures and the acceptance-criteria summary.

Tests marked ``@pytest.mark.acceptance(n, "title")`` are tallied and one
PASS/FAIL line per criterion is printed at the end of the session.
"""
import random
import time

import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item._elapsed = time.perf_counter() - start


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "passed": True, "seconds": 0.0, "ran": False})
    if report.when == "call" or report.failed:
        entry["ran"] = True
        entry["passed"] = entry["passed"] and report.passed
        entry["seconds"] += getattr(item, "_elapsed", 0.0) if report.when == "call" else 0.0


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        status = "PASS" if entry["passed"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(
            f"{status} criterion {number:>2}: {entry['title']} ({entry['seconds']:.2f} s)"
        )


@pytest.fixture
def rng():
    return random.Random(20240607)
