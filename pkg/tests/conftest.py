import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    state = {"detail": ""}

    def note(text: str):
        state["detail"] = text

    yield note
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"{'PASS' if ok else 'FAIL'} {request.node.name}: {state['detail']}"
    _CRITERIA.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
