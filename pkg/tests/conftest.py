import pytest

from recollement import io
from recollement import torsion as tt


@pytest.fixture(scope="session")
def kA2():
    return io.load_algebra_with_atoms("kA2")


@pytest.fixture(scope="session")
def t2():
    return io.load_instance("t2_kA2")


@pytest.fixture(scope="session")
def prod():
    return io.load_instance("product_kA2")


@pytest.fixture(scope="session")
def kA2_pairs(kA2):
    return tt.enumerate_torsion_pairs(kA2)


@pytest.fixture(scope="session")
def lambda_pairs(t2):
    return tt.enumerate_torsion_pairs(t2.lambda_atoms)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
