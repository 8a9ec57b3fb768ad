"""Shared pytest hooks: a one-line pass/fail report per acceptance criterion."""

import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_(criterion_\d+)", report.nodeid)
    if not match:
        return
    name = match.group(1)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _RESULTS[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda n: int(n.split("_")[1])):
        outcome, duration = _RESULTS[name]
        label = "PASS" if outcome == "passed" else "FAIL"
        number = name.split("_")[1]
        terminalreporter.write_line(f"{label} criterion {number} ({duration:.2f}s)")
