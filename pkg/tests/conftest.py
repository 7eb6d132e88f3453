import pytest

from lmesflow import build_network


@pytest.fixture
def diamond():
    # s=0, a=1, b=2, t=3
    return build_network(4, [(0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3), (1, 2, 1)], 0, 3)


@pytest.fixture
def single_arc():
    return build_network(2, [(0, 1, 7)], 0, 1)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=str):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
