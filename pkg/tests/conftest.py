import pytest

from palsums import generators as gen
from palsums import prover


@pytest.fixture(scope="session")
def pal1():
    return prover.nwa_machine("palChecker")


@pytest.fixture(scope="session")
def pal2():
    return prover.nwa_machine("palChecker2")


@pytest.fixture(scope="session")
def pal3():
    return prover.nwa_machine("palChecker3")


@pytest.fixture(scope="session")
def fig1():
    return gen.gen_fig1_machine()


@pytest.fixture(scope="session")
def syntax():
    return gen.gen_syntax_checker(1)


# Acceptance results, printed once at the end of the run.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
