import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

# wall clock reference for the whole-suite runtime check
SUITE_START = time.monotonic()

# one line per acceptance criterion, printed after capture ends
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
