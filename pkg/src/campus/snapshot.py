"""
OLTP snapshot files: the old and new source files the ETL diffs.
"""

import logging
from pathlib import Path

from ..engine.storage import read_database, write_database
from ..engine.table import Database
from ..errors import SnapshotError
from .schema import OLTP_TABLES, build_oltp_schema

logger = logging.getLogger(__name__)


def check_compatible(db: Database) -> None:
    """Raise SnapshotError unless `db` has exactly the OLTP tables and layouts."""
    if db.kind != "oltp":
        raise SnapshotError(f"expected an oltp snapshot, got {db.kind!r}")
    expected = build_oltp_schema()
    if set(db.names) != set(OLTP_TABLES):
        raise SnapshotError(f"snapshot tables {sorted(db.names)} differ from {sorted(OLTP_TABLES)}")
    for name, schema in expected.items():
        found = db[name].schema
        if found.fields != schema.fields or found.primary_key != schema.primary_key:
            raise SnapshotError(f"snapshot table {name} has an incompatible layout")


def snapshot(db: Database, path: str | Path) -> Path:
    check_compatible(db)
    return write_database(db, path)


def load_snapshot(path: str | Path, expected_hash: str | None = None) -> Database:
    """
    Load an OLTP snapshot.

    Args:
        path: Snapshot file
        expected_hash: Config hash the caller generated from, if known

    Returns:
        The database, tables in snapshot (primary-key) order
    """
    db = read_database(path)
    check_compatible(db)
    if expected_hash and db.config_hash != expected_hash:
        logger.warning(
            "snapshot %s was generated from config %s, expected %s",
            path, db.config_hash, expected_hash,
        )
    return db
