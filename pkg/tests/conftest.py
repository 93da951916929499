import sys

import numpy as np
import pytest

from belfuse import Frame, MassFunction


@pytest.fixture
def frame3():
    return Frame(["w1", "w2", "w3"])


@pytest.fixture
def zadeh(frame3):
    m1 = MassFunction(frame3, {0b001: 0.9, 0b100: 0.1})
    m2 = MassFunction(frame3, {0b010: 0.9, 0b100: 0.1})
    return m1, m2


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
