"""Shared fixtures: the Fibonacci scheme and a few standard point sets and measures"""

import numpy as np
import pytest

from fqc.config import RunConfig
from fqc.cutproject import enumerate_lattice, fibonacci_scheme, model_set
from fqc.geometry import Lattice, PointSet
from fqc.measures import DiscreteMeasure


@pytest.fixture(scope="session")
def fib():
    return fibonacci_scheme()


@pytest.fixture(scope="session")
def config():
    return RunConfig()


def integer_points(half_width: float) -> PointSet:
    _, pts = enumerate_lattice(Lattice([[1.0]]), [[-half_width, half_width]])
    return PointSet.from_points(pts, [[-half_width, half_width]])


def unit_comb(ps: PointSet) -> DiscreteMeasure:
    return DiscreteMeasure(ps.points.copy(), np.ones(ps.size, dtype=complex), ps.box.copy(), ps.dedup_tol)


@pytest.fixture
def z50():
    return integer_points(50)


@pytest.fixture
def z_comb():
    return unit_comb(integer_points(50))


@pytest.fixture(scope="session")
def fib_chain(fib):
    return model_set(fib, box=200.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale acceptance runs (tens of seconds)")
