import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cubebilliard.language import enumerate_language  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def square():
    """Exact square language up to length 8: (LanguageSet, table, report)."""
    return enumerate_language(2, 8)


@pytest.fixture(scope="session")
def cube():
    return enumerate_language(3, 6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
