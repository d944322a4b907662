"""Shared test plumbing: surface acceptance-criterion lines in the summary.

Criterion results are printed inside the tests, but pytest captures stdout
of passing tests; recording them here and replaying them in the terminal
summary keeps one visible line per executed criterion in any run mode.
"""

_acceptance_lines: list = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.line(line)
