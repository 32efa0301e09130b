import numpy as np
import pytest
from hypothesis import settings

from bihyp.core import Bihyperbolic

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def jtable_mul(a, b):
    """Multiply canonical quadruples with the j-table: j_a j_b = j_(a xor b)."""
    out = [0.0] * 4
    for i in range(4):
        for k in range(4):
            out[i ^ k] += a[i] * b[k]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def bh(*lam):
    return Bihyperbolic(*lam)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
