import pytest

from nicholsgf2 import braided as B
from nicholsgf2.field import element_of_order, make_field

# lines collected by test_acceptance and echoed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(scope="session")
def F2():
    return make_field(1)


@pytest.fixture(scope="session")
def F4():
    return make_field(2)


@pytest.fixture(scope="session")
def w(F4):
    return element_of_order(F4, 3)


@pytest.fixture(scope="session")
def spaces(F2, F4, w):
    o, o4 = F2.one, F4.one
    return {
        "jordan": B.jordan(F2),
        "lstr111": B.lstr(o, o, o),
        "lstr11w": B.lstr(o4, o4, w),
        "pale1": B.pale(o4, o4),
        "palew": B.pale(o4, w),
        "poseidon": B.poseidon([[o] * 3] * 3, [o, o]),
    }
