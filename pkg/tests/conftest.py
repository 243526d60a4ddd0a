"""Shared test scaffolding.

The acceptance tests append one "PASS"/"FAIL" line per criterion to
``acceptance_lines``; the terminal-summary hook prints them in their own
section so the verdicts are visible in a plain ``pytest`` run.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_lines:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="-")
    for line in acceptance_lines:
        terminalreporter.write_line(line)
