import pytest

from helpers import complete, star
from qftr.graph import Graph


@pytest.fixture
def triangle():
    return complete(3)


@pytest.fixture
def chain3():
    return Graph(3, [(1, 2), (2, 3)])


@pytest.fixture
def chain4():
    return Graph(4, [(1, 2), (2, 3), (3, 4)])


@pytest.fixture
def star4():
    return star(4)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0]), k)):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'} - {detail}")
