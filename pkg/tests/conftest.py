"""Shared fixtures.

Session-scoped rasters and torsion fields keep the suite inside its
runtime budget; unit tests run at resolution 128 and leave the pinned
high-resolution configurations to the acceptance tests.
"""

import pytest

import magspec as ms


@pytest.fixture(scope="session")
def disk128():
    return ms.rasterize(ms.disk(1.0), 128)


@pytest.fixture(scope="session")
def square128():
    return ms.rasterize(ms.rectangle(1.0), 128)


@pytest.fixture(scope="session")
def disk128_torsion(disk128):
    return ms.solve_torsion_fd(disk128)


@pytest.fixture(scope="session")
def square128_torsion(square128):
    return ms.solve_torsion_fd(square128)
