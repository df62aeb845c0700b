import pytest

from linsets.gf import make_field_tower


@pytest.fixture(scope="session")
def f2():
    """F_2 < F_2 < F_16."""
    return make_field_tower(2, 1, 4)


@pytest.fixture(scope="session")
def f3():
    """F_3 < F_3 < F_81."""
    return make_field_tower(3, 1, 4)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
