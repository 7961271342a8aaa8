"""Shared pytest hooks.

The acceptance tests record one line per release criterion; echo them in
the terminal summary so every run shows the pass/fail verdicts even when
output capture is active.
"""

acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
