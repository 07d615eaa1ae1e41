import numpy as np
import pytest

from ermakov import squarewell as sw
from ermakov.grid import Grid, Interval
from ermakov.potentials import constant_potential
from ermakov.schrodinger import integrate_pair


@pytest.fixture(scope="session")
def grid():
    return sw.default_grid()


@pytest.fixture(scope="session")
def w():
    return sw.superpotential()


@pytest.fixture(scope="session")
def well(grid):
    return sw.potential(grid.interval.margin)


@pytest.fixture(scope="session")
def partner():
    return sw.partner_potential()


@pytest.fixture(scope="session")
def pairs(well, grid):
    """Integrated solution pairs on the well at E = k**2 - 1."""
    return {k: integrate_pair(well, float(k * k - 1), grid) for k in range(2, 7)}


@pytest.fixture(scope="session")
def free():
    """V = 0 on [-pi, pi] sampled on 2001 points."""
    iv = Interval(-np.pi, np.pi)
    return constant_potential(0.0, iv), Grid(iv, 2001)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
