"""
Constructive merge: effective-dated loading that never deletes a row.
"""

import logging
from dataclasses import asdict, dataclass
from datetime import date
from typing import Any, Callable, Dict, Iterable, List, Mapping, Tuple

import pandas as pd

from ..config import OPEN_DATE, VALID_FROM, VALID_TO
from ..engine.operators import Predicate
from ..engine.schema import is_open
from ..engine.table import Row, Table
from ..errors import EtlError
from .transform import frame_rows, staged_columns

logger = logging.getLogger(__name__)


@dataclass
class LoadStats:
    inserted: int = 0
    closed: int = 0
    unchanged: int = 0
    load_date: date | None = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["load_date"] = self.load_date.isoformat() if self.load_date else None
        return data


def _staged_map(table: Table, staged: pd.DataFrame | Iterable[Any]) -> Dict[Row, Row]:
    """Business key → payload for every staged row."""
    schema = table.schema
    columns = staged_columns(schema)
    if isinstance(staged, pd.DataFrame):
        rows = frame_rows(staged, columns)
    else:
        rows = [
            tuple(r[c] for c in columns) if isinstance(r, Mapping) else tuple(r)
            for r in staged
        ]
    key_at = [columns.index(k) for k in schema.primary_key]
    payload_at = [columns.index(p) for p in schema.payload_fields]

    out: Dict[Row, Row] = {}
    for row in rows:
        if len(row) != len(columns):
            raise EtlError(f"{schema.name}: staged row {row} does not match {columns}")
        key = tuple(row[i] for i in key_at)
        if key in out:
            raise EtlError(f"{schema.name}: business key {key} staged twice")
        out[key] = tuple(row[i] for i in payload_at)
    return out


def constructive_merge(
    target: Table,
    staged: pd.DataFrame | Iterable[Any],
    load_date: date,
    scope: Callable[[Row], bool] | None = None,
) -> LoadStats:
    """
    Merge staged rows into an effective-dated table.

    New key: insert an open row. Same payload as the open row: unchanged.
    Different payload: close the open row at load_date and insert the new
    version. An open key missing from the staged rows is closed, provided
    `scope` (a predicate on the business key) admits it.

    Args:
        target: Warehouse table ending in tglmula/tglakhir
        staged: Frame or rows of the table's non-validity fields
        load_date: Effective date of this load
        scope: Keys eligible for closing on disappearance (all when None)

    Returns:
        LoadStats for this table
    """
    schema = target.schema
    if not schema.is_effective_dated:
        raise EtlError(f"{schema.name} has no tglmula/tglakhir fields")
    names = schema.field_names
    key_at = [schema.index_of(k) for k in schema.primary_key]
    payload_at = [schema.index_of(p) for p in schema.payload_fields]
    from_at, to_at = schema.index_of(VALID_FROM), schema.index_of(VALID_TO)

    open_rows: Dict[Row, int] = {}
    for position, row in enumerate(target.rows):
        if not is_open(row[to_at]):
            continue
        key = tuple(row[i] for i in key_at)
        if key in open_rows:
            raise EtlError(f"{schema.name}: key {key} has two open rows")
        if load_date < row[from_at]:
            raise EtlError(f"{schema.name}: load date {load_date} precedes open row dated {row[from_at]}")
        open_rows[key] = position

    def build(key: Row, payload: Row) -> Row:
        values = [None] * len(names)
        for i, v in zip(key_at, key):
            values[i] = v
        for i, v in zip(payload_at, payload):
            values[i] = v
        values[from_at] = load_date
        values[to_at] = OPEN_DATE
        return target.validate(values)

    def close(position: int) -> None:
        row = target.rows[position]
        target.replace(position, row[:to_at] + (load_date,) + row[to_at + 1:])

    # Every new version is built and validated before the table is touched
    stats = LoadStats(load_date=load_date)
    incoming = _staged_map(target, staged)
    closing: List[int] = []
    inserting: List[Row] = []
    for key, payload in incoming.items():
        position = open_rows.get(key)
        if position is not None:
            current = target.rows[position]
            if tuple(current[i] for i in payload_at) == payload:
                stats.unchanged += 1
                continue
            closing.append(position)
        inserting.append(build(key, payload))

    for key, position in open_rows.items():
        if key in incoming or (scope is not None and not scope(key)):
            continue
        closing.append(position)

    for position in closing:
        close(position)
    for row in inserting:
        target.insert(row)
    stats.closed, stats.inserted = len(closing), len(inserting)

    logger.debug("merged %s: %s", schema.name, stats)
    return stats


def valid_at(as_of: date | None = None) -> Predicate:
    """Rows open now (as_of None) or valid on as_of: tglmula ≤ as_of < tglakhir."""
    if as_of is None:
        return Predicate((VALID_TO,), is_open)
    return Predicate((VALID_FROM, VALID_TO), lambda start, end: start <= as_of < end)


def current_view(table: Table, as_of: date | None = None) -> Table:
    """Rows of an effective-dated table valid at `as_of` (open rows when None)."""
    test = valid_at(as_of).bind(table.schema.field_names)
    return Table(table.schema, (row for row in table.rows if test(row)))


def history(table: Table, key: Tuple[Any, ...]) -> list:
    """Every version of one business key, oldest first."""
    key_at = [table.schema.index_of(k) for k in table.schema.primary_key]
    from_at = table.schema.index_of(VALID_FROM)
    versions = [row for row in table.rows if tuple(row[i] for i in key_at) == tuple(key)]
    return sorted(versions, key=lambda row: row[from_at])
