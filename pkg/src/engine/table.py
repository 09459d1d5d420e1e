"""
Row storage: tables of fixed-width rows and the database that groups them.
"""

from datetime import date
from typing import Any, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

from ..errors import DuplicateKeyError, RowError, SchemaError
from .schema import TableSchema

Row = Tuple[Any, ...]


class TableStats(NamedTuple):
    record_length: int
    record_count: int
    total_bytes: int


class Table:
    """
    Ordered collection of rows conforming to one schema.

    Rows are stored as tuples in field order. total_bytes is always
    record_length × record_count.
    """

    def __init__(self, schema: TableSchema, rows: Iterable[Any] = ()):
        self.schema = schema
        self._rows: List[Row] = []
        self._keys: set = set()
        self._key_positions = tuple(schema.index_of(k) for k in schema.primary_key)
        for row in rows:
            self.insert(row)

    @property
    def name(self) -> str:
        return self.schema.name

    @property
    def rows(self) -> Sequence[Row]:
        return self._rows

    @property
    def record_count(self) -> int:
        return len(self._rows)

    @property
    def total_bytes(self) -> int:
        return self.schema.record_length * len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self) -> Iterator[Row]:
        return iter(self._rows)

    def _coerce(self, row: Any) -> Row:
        fields = self.schema.fields
        if isinstance(row, Mapping):
            missing = [f.name for f in fields if f.name not in row]
            extra = [k for k in row if not self.schema.has_field(k)]
            if missing or extra:
                raise RowError(
                    f"{self.name}: row mismatch, missing {missing} unexpected {extra}"
                )
            values = tuple(row[f.name] for f in fields)
        else:
            values = tuple(row)
            if len(values) != len(fields):
                raise RowError(
                    f"{self.name}: expected {len(fields)} values, got {len(values)}"
                )
        for spec, value in zip(fields, values):
            spec.check(value)
        return values

    def validate(self, row: Any) -> Row:
        """The row as a tuple in field order; raises RowError if it does not fit."""
        return self._coerce(row)

    def key_of(self, row: Row) -> Row:
        return tuple(row[i] for i in self._key_positions)

    def insert(self, row: Any) -> int:
        """Validate and append a row; returns its position."""
        values = self._coerce(row)
        if self.schema.enforce_key and self._key_positions:
            key = self.key_of(values)
            if key in self._keys:
                raise DuplicateKeyError(f"{self.name}: duplicate primary key {key}")
            self._keys.add(key)
        self._rows.append(values)
        return len(self._rows) - 1

    def replace(self, position: int, row: Any) -> None:
        """Overwrite the row at `position` in place; key fields must not change."""
        values = self._coerce(row)
        if self.key_of(values) != self.key_of(self._rows[position]):
            raise RowError(f"{self.name}: replace may not change the primary key")
        self._rows[position] = values

    def records(self) -> Iterator[Dict[str, Any]]:
        names = self.schema.field_names
        for row in self._rows:
            yield dict(zip(names, row))

    def stats(self) -> TableStats:
        return table_stats(self)


def table_stats(table: Table) -> TableStats:
    length = table.schema.record_length
    count = table.record_count
    return TableStats(length, count, length * count)


class Database:
    """
    Named tables plus snapshot metadata.

    kind is "oltp" or "warehouse"; taken_on is the snapshot date used as
    the ETL load date; config_hash identifies the generator configuration.
    """

    def __init__(
        self,
        kind: str,
        tables: Iterable[Table] = (),
        taken_on: date | None = None,
        config_hash: str = "",
    ):
        self.kind = kind
        self.taken_on = taken_on
        self.config_hash = config_hash
        self._tables: Dict[str, Table] = {}
        for table in tables:
            self.add(table)

    def add(self, table: Table) -> Table:
        if table.name in self._tables:
            raise SchemaError(f"database already holds table {table.name!r}")
        self._tables[table.name] = table
        return table

    def __getitem__(self, name: str) -> Table:
        try:
            return self._tables[name]
        except KeyError:
            raise SchemaError(f"{self.kind} database has no table {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._tables

    def __iter__(self) -> Iterator[Table]:
        return iter(self._tables.values())

    def __len__(self) -> int:
        return len(self._tables)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._tables)

    @property
    def total_records(self) -> int:
        return sum(t.record_count for t in self)

    def copy(self, taken_on: date | None = None) -> "Database":
        """Independent copy of every table, optionally re-dated."""
        return Database(
            self.kind,
            (Table(t.schema, t.rows) for t in self),
            taken_on=taken_on or self.taken_on,
            config_hash=self.config_hash,
        )
