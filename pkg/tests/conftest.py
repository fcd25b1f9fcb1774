import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fskmodem.core import FskParams  # noqa: E402

# Lines appended by test_acceptance.py, echoed in the terminal summary.
ACCEPTANCE_LINES = []


@pytest.fixture
def baseband():
    """8 samples/symbol, tones at -/+ half the symbol rate (h = 1)."""
    return FskParams(8000.0, -500.0, 500.0, 0.001)


@pytest.fixture
def appendix_params():
    return FskParams(1000.0, 10.0, 20.0, 1.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
