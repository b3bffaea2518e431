"""Per-criterion PASS/FAIL summary for tests marked with ``criterion``."""

import pytest

_criteria = {}  # number -> [description, passed]
_owner = {}  # nodeid -> number


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        number, text = mark.args
        _owner[item.nodeid] = number
        _criteria.setdefault(number, [text, True])


def pytest_runtest_logreport(report):
    number = _owner.get(report.nodeid)
    if number is not None and (report.failed or (report.when == "call" and report.skipped)):
        _criteria[number][1] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
