"""Collects one PASS/FAIL line per acceptance criterion and prints them at the end of the run."""

import pytest

_RESULTS: dict[int, tuple[str, list[str]]] = {}


@pytest.fixture
def report(request):
    """Lines appended here are shown under the criterion's summary line."""
    lines: list[str] = []
    request.node._acceptance_lines = lines
    return lines


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    verdict = "PASS" if rep.passed else "FAIL"
    lines = getattr(item, "_acceptance_lines", [])
    _RESULTS[number] = (f"criterion {number} {verdict}: {title} [{call.duration:.2f}s]", list(lines))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        line, details = _RESULTS[number]
        terminalreporter.write_line(line)
        for detail in details:
            terminalreporter.write_line(f"    {detail}")
