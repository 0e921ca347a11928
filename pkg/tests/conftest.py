"""Shared fixtures and hypothesis settings."""

from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when != "call" and not report.failed and not report.skipped:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": [], "xfailed": [],
                                          "failed": [], "skipped": []})
    if hasattr(report, "wasxfail"):
        entry["xfailed"].append(item.name)
    elif report.skipped:
        entry["skipped"].append(item.name)
    elif report.failed:
        entry["failed"].append(item.name)
    elif report.when == "call":
        entry["passed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        ok = not (e["failed"] or e["xfailed"] or e["skipped"])
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {e['title']} " \
               f"({len(e['passed'])} passed"
        if e["failed"]:
            line += f"; failed: {', '.join(e['failed'])}"
        if e["xfailed"]:
            line += f"; expected failures: {', '.join(e['xfailed'])}"
        if e["skipped"]:
            line += f"; skipped: {', '.join(e['skipped'])}"
        terminalreporter.write_line(line + ")")
