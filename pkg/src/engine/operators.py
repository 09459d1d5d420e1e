"""
Scan, hash-join and group-aggregate over fixed-width tables.

There are no indexes: every scan reads the whole table and is metered at
full size whatever the predicate selects.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import PlanError
from .metrics import Meter
from .schema import FieldKind, FieldSpec, NUMERIC_KINDS, define_table, join_compatible
from .table import Row, Table

AGGREGATE_FUNCTIONS = ("count", "count_distinct", "sum")
DEFAULT_AGGREGATE_WIDTH = 12


@dataclass
class Relation:
    """A row stream with its field layout. `label` names the source for disambiguation."""

    fields: Tuple[FieldSpec, ...]
    rows: Iterable[Row]
    label: str = ""

    def __iter__(self) -> Iterator[Row]:
        return iter(self.rows)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.fields)

    def index(self, name: str) -> int:
        names = self.names
        if name not in names:
            raise PlanError(f"unknown field {name!r}; available: {list(names)}")
        return names.index(name)

    def field(self, name: str) -> FieldSpec:
        return self.fields[self.index(name)]


@dataclass(frozen=True)
class Predicate:
    """Row filter over named fields; `test` receives the field values in order."""

    fields: Tuple[str, ...]
    test: Callable[..., bool]

    def bind(self, names: Sequence[str]) -> Callable[[Row], bool]:
        unknown = [f for f in self.fields if f not in names]
        if unknown:
            raise PlanError(f"predicate references unknown fields {unknown}")
        positions = tuple(list(names).index(f) for f in self.fields)
        test = self.test
        if len(positions) == 1:
            only = positions[0]
            return lambda row: test(row[only])
        return lambda row: test(*(row[p] for p in positions))


def field_equals(name: str, value: Any) -> Predicate:
    return Predicate((name,), lambda v: v == value)


@dataclass(frozen=True)
class Aggregate:
    """count, count_distinct(field) or sum(field), written to `alias`."""

    function: str
    field: Optional[str] = None
    alias: Optional[str] = None
    width: int = DEFAULT_AGGREGATE_WIDTH

    def __post_init__(self) -> None:
        if self.function not in AGGREGATE_FUNCTIONS:
            raise PlanError(f"unknown aggregate {self.function!r}")
        if self.function != "count" and not self.field:
            raise PlanError(f"{self.function} needs a field")

    @property
    def output_name(self) -> str:
        if self.alias:
            return self.alias
        return self.function if self.field is None else f"{self.function}_{self.field}"


def scan(table: Table, predicate: Predicate | None = None, meter: Meter | None = None) -> Relation:
    """
    Full-table scan yielding rows that satisfy the predicate.

    The meter is charged the whole table (rows × record_length) up front.
    """
    test = predicate.bind(table.schema.field_names) if predicate else None
    if meter is not None:
        meter.record(table.schema, table.record_count)
    rows = table.rows if test is None else (row for row in table.rows if test(row))
    return Relation(table.schema.fields, rows, label=table.name)


def _disambiguate(left: Sequence[FieldSpec], right: Sequence[FieldSpec], label: str) -> Tuple[FieldSpec, ...]:
    taken = {f.name for f in left}
    out = list(left)
    for spec in right:
        name = spec.name
        if name in taken:
            base = f"{label}.{name}" if label else f"right.{name}"
            name, suffix = base, 2
            while name in taken:
                name = f"{base}_{suffix}"
                suffix += 1
            spec = spec.renamed(name)
        taken.add(name)
        out.append(spec)
    return tuple(out)


def hash_join(left: Relation, right: Relation, key_pairs: Sequence[Tuple[str, str]]) -> Relation:
    """
    Inner equi-join of two relations.

    Args:
        left: Left input; its field names win on collision
        right: Right input; colliding names become "<label>.<name>"
        key_pairs: (left field, right field) equality pairs

    Returns:
        Relation with all left fields followed by all right fields
    """
    if not key_pairs:
        raise PlanError("hash_join needs at least one key pair")
    left_pos, right_pos = [], []
    for left_name, right_name in key_pairs:
        lspec, rspec = left.field(left_name), right.field(right_name)
        if not join_compatible(lspec.kind, rspec.kind):
            raise PlanError(
                f"incompatible key kinds: {left_name} is {lspec.kind.value}, "
                f"{right_name} is {rspec.kind.value}"
            )
        left_pos.append(left.index(left_name))
        right_pos.append(right.index(right_name))

    fields = _disambiguate(left.fields, right.fields, right.label)
    left_rows, right_rows = list(left.rows), list(right.rows)

    # Build on the smaller input, probe with the larger
    build_left = len(left_rows) <= len(right_rows)
    build_rows, build_pos = (left_rows, left_pos) if build_left else (right_rows, right_pos)
    probe_rows, probe_pos = (right_rows, right_pos) if build_left else (left_rows, left_pos)

    buckets: Dict[Row, List[Row]] = defaultdict(list)
    for row in build_rows:
        buckets[tuple(row[p] for p in build_pos)].append(row)

    out: List[Row] = []
    for row in probe_rows:
        matches = buckets.get(tuple(row[p] for p in probe_pos))
        if not matches:
            continue
        if build_left:
            out.extend(match + row for match in matches)
        else:
            out.extend(row + match for match in matches)

    label = f"{left.label}+{right.label}" if left.label and right.label else left.label
    return Relation(fields, out, label=label)


def group_aggregate(
    relation: Relation,
    group_fields: Sequence[str],
    aggregates: Sequence[Aggregate],
    name: str = "result",
) -> Table:
    """
    Group rows and compute aggregates.

    Output has one row per group key present in the input, ordered
    lexicographically by the group key.
    """
    group_pos = [relation.index(g) for g in group_fields]
    out_fields = [relation.field(g) for g in group_fields]

    agg_pos: List[Optional[int]] = []
    for agg in aggregates:
        if agg.field is None:
            agg_pos.append(None)
            out_fields.append(FieldSpec(agg.output_name, FieldKind.INTEGER, agg.width))
            continue
        spec = relation.field(agg.field)
        if agg.function == "sum" and spec.kind not in NUMERIC_KINDS:
            raise PlanError(f"sum over non-numeric field {agg.field!r} ({spec.kind.value})")
        kind = spec.kind if agg.function == "sum" else FieldKind.INTEGER
        agg_pos.append(relation.index(agg.field))
        out_fields.append(FieldSpec(agg.output_name, kind, agg.width))

    schema = define_table(name, out_fields, primary_key=group_fields, enforce_key=False)

    groups: Dict[Row, List[Any]] = {}
    for row in relation.rows:
        key = tuple(row[p] for p in group_pos)
        state = groups.get(key)
        if state is None:
            state = [_initial(agg) for agg in aggregates]
            groups[key] = state
        for i, agg in enumerate(aggregates):
            if agg.function == "count":
                state[i] += 1
            elif agg.function == "count_distinct":
                state[i].add(row[agg_pos[i]])
            else:
                state[i] += row[agg_pos[i]]

    result = Table(schema)
    for key in sorted(groups):
        values = [len(s) if isinstance(s, set) else s for s in groups[key]]
        result.insert(key + tuple(values))
    return result


def _initial(agg: Aggregate) -> Any:
    if agg.function == "count_distinct":
        return set()
    return 0


def to_relation(table: Table) -> Relation:
    """Unmetered view of a materialized table."""
    return Relation(table.schema.fields, table.rows, label=table.name)


def materialize(relation: Relation, name: str = "result") -> Table:
    schema = define_table(name, relation.fields, enforce_key=False)
    return Table(schema, relation.rows)
