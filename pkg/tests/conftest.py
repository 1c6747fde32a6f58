import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# Filled by tests/test_acceptance.py; one line per criterion.  Re-emitted
# after the run so the verdicts survive pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
