import pytest

_LINES = []


@pytest.fixture
def acceptance_line():
    """Record one pass/fail line; the lines are repeated in the terminal summary."""
    def record(line):
        _LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
