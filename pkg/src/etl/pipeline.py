"""
ETL orchestration over old/new source snapshots.
"""

import json
import logging
from datetime import date
from pathlib import Path
from typing import Dict, Set

import pandas as pd

from ..campus.snapshot import check_compatible
from ..config import VALID_TO, WAREHOUSE_FILENAME
from ..engine.storage import read_database, sorted_rows, write_database
from ..engine.schema import TableSchema, is_open
from ..engine.table import Database
from ..errors import EtlError, SnapshotError
from ..modeler.warehouse import WarehouseSchema, derive_from_catalog, empty_warehouse
from .merge import LoadStats, constructive_merge
from .transform import SOURCES, extract_transform, staged_columns

logger = logging.getLogger(__name__)


def check_warehouse(db: Database, schema: WarehouseSchema) -> None:
    if db.kind != "warehouse":
        raise EtlError(f"expected a warehouse database, got {db.kind!r}")
    for table in schema.tables:
        if table.name not in db or db[table.name].schema.fields != table.fields:
            raise EtlError(f"warehouse table {table.name} is missing or has another layout")


def check_primed(warehouse: Database, old: Database) -> None:
    """A diff load needs a warehouse that already holds the load of `old`."""
    if warehouse.taken_on is None or warehouse.taken_on != old.taken_on:
        raise EtlError(
            f"warehouse was last loaded on {warehouse.taken_on}, not from the old snapshot "
            f"of {old.taken_on}; load it from the old snapshot first or omit the old snapshot"
        )
    if warehouse.total_records == 0 and old.total_records > 0:
        raise EtlError("warehouse is empty but the old snapshot is not; load the old snapshot first")


def changed_tables(old: Database, new: Database) -> Set[str]:
    """OLTP tables whose row sets differ between two snapshots."""
    return {
        name for name in new.names
        if name not in old or sorted_rows(old[name]) != sorted_rows(new[name])
    }


def changed_keys(table_schema: TableSchema, old: pd.DataFrame, new: pd.DataFrame) -> Set[tuple]:
    """Business keys whose staged rows differ between two staged frames."""
    columns = staged_columns(table_schema)
    merged = old[columns].astype(object).merge(
        new[columns].astype(object), how="outer", on=columns, indicator=True
    )
    differing = merged[merged["_merge"] != "both"]
    key = list(table_schema.primary_key)
    return set(zip(*(differing[k].tolist() for k in key))) if not differing.empty else set()


def run_etl(
    old: Database | None,
    new: Database,
    warehouse: Database,
    schema: WarehouseSchema | None = None,
) -> Dict[str, LoadStats]:
    """
    Load `new` into the warehouse.

    Without an old snapshot every table is restaged in full. With one,
    tables whose source tables did not change are skipped, and in the
    rest only business keys whose staged rows differ are merged. The
    warehouse must already hold the load of `old`.

    Args:
        old: Previous snapshot, or None for a first load
        new: Current snapshot; its taken_on date is the load date
        warehouse: Warehouse database, modified in place
        schema: Warehouse schema (derived from the report catalog by default)

    Returns:
        Table name → LoadStats

    Raises:
        EtlError: incompatible snapshots, a warehouse of another layout, or
            a diff load into a warehouse that was not loaded from `old`
    """
    schema = schema or derive_from_catalog()
    try:
        check_compatible(new)
        if old is not None:
            check_compatible(old)
    except SnapshotError as exc:
        raise EtlError(f"incompatible snapshots: {exc}") from exc
    check_warehouse(warehouse, schema)
    load_date = new.taken_on or date.today()
    if old is not None and old.taken_on and load_date < old.taken_on:
        raise EtlError(f"new snapshot ({load_date}) is older than the old one ({old.taken_on})")
    if old is not None:
        check_primed(warehouse, old)

    results: Dict[str, LoadStats] = {}
    if old is None:
        staged = extract_transform(new, schema)
        for name in schema.table_names:
            results[name] = constructive_merge(warehouse[name], staged[name], load_date)
    else:
        touched = changed_tables(old, new)
        pending = [n for n in schema.table_names if set(SOURCES[n]) & touched]
        staged_new = extract_transform(new, schema, pending)
        staged_old = extract_transform(old, schema, pending)
        for name in schema.table_names:
            target = warehouse[name]
            if name not in staged_new:
                results[name] = LoadStats(unchanged=_open_count(target), load_date=load_date)
                continue
            keys = changed_keys(target.schema, staged_old[name], staged_new[name])
            frame = staged_new[name]
            if not frame.empty:
                key_cols = list(target.schema.primary_key)
                frame = frame[[k in keys for k in zip(*(frame[c].tolist() for c in key_cols))]]
            stats = constructive_merge(target, frame, load_date, scope=keys.__contains__)
            stats.unchanged = _open_count(target) - stats.inserted
            results[name] = stats

    warehouse.taken_on = load_date
    for name, stats in results.items():
        logger.info(
            "%s: inserted %d, closed %d, unchanged %d",
            name, stats.inserted, stats.closed, stats.unchanged,
        )
    return results


def full_restage(new: Database, warehouse: Database, schema: WarehouseSchema | None = None) -> Dict[str, LoadStats]:
    """Merge every staged row of `new`, ignoring what changed."""
    schema = schema or derive_from_catalog()
    check_warehouse(warehouse, schema)
    load_date = new.taken_on or date.today()
    staged = extract_transform(new, schema)
    results = {name: constructive_merge(warehouse[name], staged[name], load_date) for name in schema.table_names}
    warehouse.taken_on = load_date
    return results


def _open_count(table) -> int:
    at = table.schema.index_of(VALID_TO)
    return sum(1 for row in table.rows if is_open(row[at]))


def save_warehouse(db: Database, directory: str | Path) -> Path:
    return write_database(db, Path(directory) / WAREHOUSE_FILENAME)


def load_warehouse(directory: str | Path, schema: WarehouseSchema | None = None) -> Database:
    """The persisted warehouse in `directory`, or an empty one if none was saved yet."""
    path = Path(directory) / WAREHOUSE_FILENAME
    schema = schema or derive_from_catalog()
    if not path.exists():
        logger.info("no warehouse in %s, starting empty", directory)
        return empty_warehouse(schema)
    db = read_database(path)
    check_warehouse(db, schema)
    return db


def render_load_report(stats: Dict[str, LoadStats], fmt: str = "text") -> str:
    """Per-table load statistics as JSON or aligned text."""
    if fmt == "json":
        return json.dumps({name: s.to_dict() for name, s in stats.items()}, indent=2) + "\n"
    if fmt != "text":
        raise EtlError(f"unknown load report format {fmt!r}")
    frame = pd.DataFrame(
        [(name, s.inserted, s.closed, s.unchanged) for name, s in stats.items()],
        columns=["table", "inserted", "closed", "unchanged"],
    )
    dates = {s.load_date for s in stats.values() if s.load_date}
    header = f"load date: {min(dates).isoformat()}\n" if dates else ""
    return header + frame.to_string(index=False) + "\n"
