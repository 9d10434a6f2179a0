import pytest

from raagpres.complex import FlagComplex, fixture


def cycle(k):
    vs = [str(i) for i in range(1, k + 1)]
    return FlagComplex.build(vs, [(vs[i], vs[(i + 1) % k]) for i in range(k)], ordering=vs)


@pytest.fixture
def hexagon():
    return fixture("hexagon")


@pytest.fixture
def disc():
    return fixture("disc")


@pytest.fixture(scope="session")
def rp2():
    return fixture("rp2")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
