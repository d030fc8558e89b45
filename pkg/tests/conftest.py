import pytest

from regseq import linrep as lr

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def tm():
    return lr.tm_fixture()


@pytest.fixture(scope="session")
def example():
    return lr.example_fixture()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
