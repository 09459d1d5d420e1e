"""
Pipe-delimited snapshot codec.

Layout (UTF-8, LF):

    #SNAPSHOT|<version>|<kind>|<config hash>|<taken on YYYYMMDD or ->
    @TABLE|<name>|<row count>|<key fields, comma separated>|<enforce key 1/0>
    @FIELDS|<name>:<kind>:<width>[:<v1>/<v2>...]|...
    <value>|<value>|...
    #END|<total rows>

Rows are written in primary-key order so a database always serializes to
the same bytes.
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Iterator, List, Tuple

from ..config import SNAPSHOT_VERSION
from ..errors import RowError, SchemaError, SnapshotError
from .schema import FieldKind, FieldSpec, define_table
from .table import Database, Table

logger = logging.getLogger(__name__)

HEADER = "#SNAPSHOT"
TABLE = "@TABLE"
FIELDS = "@FIELDS"
END = "#END"


def _field_token(spec: FieldSpec) -> str:
    token = f"{spec.name}:{spec.kind.value}:{spec.width}"
    if spec.values:
        token += ":" + "/".join(spec.values)
    return token


def _parse_field(token: str) -> FieldSpec:
    parts = token.split(":")
    if len(parts) not in (3, 4):
        raise SnapshotError(f"malformed field definition {token!r}")
    values = tuple(parts[3].split("/")) if len(parts) == 4 else ()
    try:
        return FieldSpec(parts[0], FieldKind(parts[1]), int(parts[2]), values)
    except (ValueError, SchemaError) as exc:
        raise SnapshotError(f"malformed field definition {token!r}") from exc


def sorted_rows(table: Table) -> List[tuple]:
    """Rows in primary-key order, full row as tie breaker."""
    return sorted(table.rows, key=lambda row: (table.key_of(row), row))


def encode_database(db: Database) -> Iterator[str]:
    taken = db.taken_on.strftime("%Y%m%d") if db.taken_on else "-"
    yield f"{HEADER}|{SNAPSHOT_VERSION}|{db.kind}|{db.config_hash or '-'}|{taken}"
    total = 0
    for table in db:
        schema = table.schema
        yield (
            f"{TABLE}|{schema.name}|{table.record_count}|"
            f"{','.join(schema.primary_key)}|{int(schema.enforce_key)}"
        )
        yield FIELDS + "|" + "|".join(_field_token(f) for f in schema.fields)
        for row in sorted_rows(table):
            yield "|".join(spec.encode(value) for spec, value in zip(schema.fields, row))
        total += table.record_count
    yield f"{END}|{total}"


def write_database(db: Database, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in encode_database(db):
            handle.write(line + "\n")
    logger.info("wrote %s snapshot %s (%d records)", db.kind, path, db.total_records)
    return path


def read_database(path: str | Path) -> Database:
    """Parse a snapshot file; any structural problem raises SnapshotError."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8", newline="\n") as handle:
            lines = handle.read().split("\n")
    except OSError as exc:
        raise SnapshotError(f"cannot read snapshot {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise SnapshotError(f"snapshot {path} is not UTF-8") from exc

    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SnapshotError(f"malformed snapshot {path}: empty file")

    header = lines[0].split("|")
    if len(header) != 5 or header[0] != HEADER:
        raise SnapshotError(f"malformed snapshot {path}: bad header")
    if header[1] != SNAPSHOT_VERSION:
        raise SnapshotError(f"unsupported snapshot version {header[1]!r}")
    kind, config_hash, taken = header[2], header[3], header[4]
    try:
        taken_on = None if taken == "-" else datetime.strptime(taken, "%Y%m%d").date()
    except ValueError as exc:
        raise SnapshotError(f"malformed snapshot {path}: bad date {taken!r}") from exc

    db = Database(kind, taken_on=taken_on, config_hash="" if config_hash == "-" else config_hash)
    position = 1
    total = 0
    while True:
        if position >= len(lines):
            raise SnapshotError(f"malformed snapshot {path}: truncated, no end marker")
        line = lines[position]
        if line.startswith(END + "|"):
            declared = line.split("|")[1]
            if not declared.isdigit() or int(declared) != total:
                raise SnapshotError(f"malformed snapshot {path}: record total mismatch")
            if position != len(lines) - 1:
                raise SnapshotError(f"malformed snapshot {path}: data after end marker")
            break
        table, position = _read_table(lines, position, path)
        db.add(table)
        total += table.record_count
    return db


def _read_table(lines: List[str], position: int, path: Path) -> Tuple[Table, int]:
    parts = lines[position].split("|")
    if len(parts) != 5 or parts[0] != TABLE or not parts[2].isdigit():
        raise SnapshotError(f"malformed snapshot {path}: bad table header at line {position + 1}")
    name, count = parts[1], int(parts[2])
    key = tuple(k for k in parts[3].split(",") if k)
    enforce = parts[4] == "1"

    position += 1
    if position >= len(lines) or not lines[position].startswith(FIELDS + "|"):
        raise SnapshotError(f"malformed snapshot {path}: missing field list for {name}")
    fields = [_parse_field(token) for token in lines[position].split("|")[1:]]
    try:
        schema = define_table(name, fields, primary_key=key, enforce_key=enforce)
    except SchemaError as exc:
        raise SnapshotError(f"malformed snapshot {path}: {exc}") from exc

    table = Table(schema)
    position += 1
    end = position + count
    if end > len(lines):
        raise SnapshotError(f"malformed snapshot {path}: table {name} truncated")
    for number in range(position, end):
        values = lines[number].split("|")
        if len(values) != len(fields):
            raise SnapshotError(f"malformed snapshot {path}: wrong arity at line {number + 1}")
        try:
            table.insert(tuple(spec.decode(v) for spec, v in zip(fields, values)))
        except RowError as exc:
            raise SnapshotError(f"malformed snapshot {path}: line {number + 1}: {exc}") from exc
    return table, end
