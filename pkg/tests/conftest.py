import time
from contextlib import contextmanager

import pytest

_OUTCOMES: dict[int, tuple[bool, str, float]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the closing summary."""

    @contextmanager
    def record(number: int, title: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _OUTCOMES[number] = (False, title, time.perf_counter() - start)
            raise
        _OUTCOMES[number] = (True, title, time.perf_counter() - start)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        ok, title, secs = _OUTCOMES[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {number}: {title} ({secs:.2f}s)")
