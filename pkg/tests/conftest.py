import numpy as np
import pytest

from multshift.subshift import GOLDEN, full_shift

from _matrices import CIRCULANT

ACCEPTANCE_LINES = []


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def full2():
    return full_shift(2)


@pytest.fixture
def circulant():
    return CIRCULANT


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_LINES.append(f"AC{number:>2} {'PASS' if passed else 'FAIL'}  {title}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
