"""Shared test plumbing: acceptance-criterion reporting.

Each acceptance test registers a one-line verdict; the lines are echoed in the
terminal summary so the pass/fail status of every criterion is visible even
when pytest captures stdout.
"""

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance():
    def report(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"acceptance {criterion}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" — {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
