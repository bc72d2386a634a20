import pytest

from torusdiag import DiagonalSpec, IntMatrix, parse_rational

WORKED_A = ((1, 1, 0), (1, 2, 0), (1, 2, 1))
WORKED_A_INV = ((2, -1, 0), (-1, 1, 0), (0, -1, 1))

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def worked_f():
    return parse_rational("1/(1+z1+z2+z3+z2*z3)", ["z1", "z2", "z3"])


@pytest.fixture
def worked_spec():
    return DiagonalSpec(((1, 1, 1), (1, 2, 2)))


@pytest.fixture
def worked_a():
    return IntMatrix(WORKED_A)


@pytest.fixture
def binomial_f():
    return parse_rational("1/(1-z1-z2)", ["z1", "z2"])


@pytest.fixture
def binomial_spec():
    return DiagonalSpec(((1, 1),))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
