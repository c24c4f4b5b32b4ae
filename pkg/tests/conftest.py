import numpy as np
import pytest

from mlbazilevic.series import TruncatedSeries


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_class_a(rng, order, scale=1.0):
    """f(z) = z + sum a_n z^n with complex normal a_n."""
    c = scale * (rng.standard_normal(order + 1) + 1j * rng.standard_normal(order + 1))
    c[0], c[1] = 0, 1
    return TruncatedSeries(c)


def random_unit(rng, order, decay=0.4):
    """1 + sum c_n z^n with |c_n| <= decay**n, zero-free in the closed disk."""
    c = rng.uniform(-1, 1, order + 1) + 1j * rng.uniform(-1, 1, order + 1)
    c = c / np.sqrt(2) * decay ** np.arange(order + 1)
    c[0] = 1
    return TruncatedSeries(c)
