"""Shared fixtures: the acceptance-criterion reporter."""

from contextlib import contextmanager

import pytest

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record and print one pass/fail line per acceptance criterion."""

    @contextmanager
    def run(number: int, label: str):
        try:
            yield
        except BaseException:
            _CRITERIA.append((number, label, "FAIL"))
            print(f"CRITERION {number}: FAIL — {label}")
            raise
        _CRITERIA.append((number, label, "PASS"))
        print(f"CRITERION {number}: PASS — {label}")

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, status in sorted(_CRITERIA):
        terminalreporter.write_line(f"CRITERION {number:2d}: {status} — {label}")
