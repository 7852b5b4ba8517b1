import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

RESULTS: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under its number."""

    def record(number: int, title: str):
        RESULTS[number] = (title, None)
        request.node._criterion = (number, title)

    yield record
    info = getattr(request.node, "_criterion", None)
    if info is not None:
        rep = getattr(request.node, "rep_call", None)
        RESULTS[info[0]] = (info[1], bool(rep and rep.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, ok = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
