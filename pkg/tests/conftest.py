"""
Shared fixtures: one desk-scale database and warehouse per session, and
the published-scale pair for tests marked `paper`.
"""

from datetime import timedelta

import pytest

from src.campus.generator import GenConfig, evolve_database, generate
from src.etl.pipeline import run_etl
from src.modeler.warehouse import derive_from_catalog, empty_warehouse

DESK_SEED = 42


def loaded_warehouse(db, schema):
    """A fresh warehouse holding a first load of `db`."""
    warehouse = empty_warehouse(schema)
    run_etl(None, db, warehouse, schema)
    return warehouse


@pytest.fixture(scope="session")
def schema():
    return derive_from_catalog()


@pytest.fixture(scope="session")
def desk_db():
    return generate(GenConfig.preset("desk", seed=DESK_SEED))


@pytest.fixture(scope="session")
def evolved_db(desk_db):
    return evolve_database(desk_db, seed=7, taken_on=desk_db.taken_on + timedelta(days=182))


@pytest.fixture(scope="session")
def desk_warehouse(desk_db, schema):
    return loaded_warehouse(desk_db, schema)


@pytest.fixture
def fresh_warehouse(schema):
    """Factory for a newly loaded warehouse the test may modify."""
    return lambda db: loaded_warehouse(db, schema)


@pytest.fixture(scope="session")
def paper_db():
    return generate(GenConfig.preset("paper", seed=DESK_SEED))


@pytest.fixture(scope="session")
def paper_warehouse(paper_db, schema):
    return loaded_warehouse(paper_db, schema)
