from __future__ import annotations

import pytest

from gridhex.cli import Engine


@pytest.fixture(scope="session")
def engine() -> Engine:
    e = Engine()
    e.build_all()
    return e


@pytest.fixture(scope="session")
def geometry(engine):
    return engine.geometry


@pytest.fixture(scope="session")
def catalog(engine):
    return engine.catalog


@pytest.fixture(scope="session")
def group(engine):
    return engine.group


@pytest.fixture(scope="session")
def space(engine):
    return engine.space


@pytest.fixture(scope="session")
def classification(engine):
    return engine.classification


@pytest.fixture(scope="session")
def pair_orbits(engine):
    return engine.pair_orbits
