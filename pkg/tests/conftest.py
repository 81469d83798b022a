import pytest

from cliffalg import Signature

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def euclid3():
    return Signature.from_pqr(3)


@pytest.fixture
def odd3():
    """Distinct squares so every q(i) factor is visible in a result."""
    return Signature({1: 3, 2: 5, 3: 7})
