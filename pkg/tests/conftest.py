import os

import pytest

from cosparsify.harness import enumerate_connected_upto


@pytest.fixture(scope="session")
def connected6():
    return enumerate_connected_upto(6)


def slow_enabled() -> bool:
    return os.environ.get("COSPARSIFY_SLOW", "") not in ("", "0")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
