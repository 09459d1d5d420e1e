"""
Plan trees and metered execution.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, Sequence, Tuple

from .metrics import Meter, QueryMetrics
from .operators import (
    Aggregate,
    Predicate,
    Relation,
    group_aggregate,
    hash_join,
    materialize,
    scan,
    to_relation,
)
from .schema import FieldSpec
from .table import Table

logger = logging.getLogger(__name__)


class PlanNode(ABC):
    """A node of a query plan."""

    @abstractmethod
    def execute(self, meter: Meter) -> Relation:
        ...

    @abstractmethod
    def base_tables(self) -> Dict[str, int]:
        """Base table name → record length, for every table the subtree scans."""


class Scan(PlanNode):
    def __init__(self, table: Table, predicate: Predicate | None = None):
        self.table = table
        self.predicate = predicate

    def execute(self, meter: Meter) -> Relation:
        return scan(self.table, self.predicate, meter)

    def base_tables(self) -> Dict[str, int]:
        return {self.table.name: self.table.schema.record_length}


class HashJoin(PlanNode):
    def __init__(self, left: PlanNode, right: PlanNode, on: Sequence[Tuple[str, str]]):
        self.left = left
        self.right = right
        self.on = tuple(on)

    def execute(self, meter: Meter) -> Relation:
        return hash_join(self.left.execute(meter), self.right.execute(meter), self.on)

    def base_tables(self) -> Dict[str, int]:
        return {**self.left.base_tables(), **self.right.base_tables()}


@dataclass(frozen=True)
class DerivedField:
    """A computed column: `compute` receives the values of `inputs` in order."""

    spec: FieldSpec
    inputs: Tuple[str, ...]
    compute: Callable[..., Any]


class Derive(PlanNode):
    """Append computed columns to every row of the child."""

    def __init__(self, child: PlanNode, columns: Sequence[DerivedField]):
        self.child = child
        self.columns = tuple(columns)

    def execute(self, meter: Meter) -> Relation:
        source = self.child.execute(meter)
        bound = [
            (tuple(source.index(name) for name in column.inputs), column.compute)
            for column in self.columns
        ]
        rows = (
            row + tuple(fn(*(row[p] for p in positions)) for positions, fn in bound)
            for row in source.rows
        )
        fields = source.fields + tuple(c.spec for c in self.columns)
        return Relation(fields, rows, label=source.label)

    def base_tables(self) -> Dict[str, int]:
        return self.child.base_tables()


class Filter(PlanNode):
    def __init__(self, child: PlanNode, predicate: Predicate):
        self.child = child
        self.predicate = predicate

    def execute(self, meter: Meter) -> Relation:
        source = self.child.execute(meter)
        test = self.predicate.bind(source.names)
        return Relation(source.fields, (row for row in source.rows if test(row)), label=source.label)

    def base_tables(self) -> Dict[str, int]:
        return self.child.base_tables()


class GroupAggregate(PlanNode):
    def __init__(self, child: PlanNode, group_by: Sequence[str], aggregates: Sequence[Aggregate] = ()):
        self.child = child
        self.group_by = tuple(group_by)
        self.aggregates = tuple(aggregates)
        self.result: Table | None = None

    def execute(self, meter: Meter) -> Relation:
        self.result = group_aggregate(self.child.execute(meter), self.group_by, self.aggregates)
        return to_relation(self.result)

    def base_tables(self) -> Dict[str, int]:
        return self.child.base_tables()


def run_metered(plan: PlanNode) -> Tuple[Table, QueryMetrics]:
    """
    Execute a plan and collect its metrics.

    Wall time covers execution and materialization only; tables_used and
    record_length_sum count each distinct base table once.

    Returns:
        Tuple of (result table, metrics)
    """
    meter = Meter()
    started = time.perf_counter()
    relation = plan.execute(meter)
    if isinstance(plan, GroupAggregate) and plan.result is not None:
        result = plan.result
    else:
        result = materialize(relation)
    elapsed = time.perf_counter() - started

    tables = plan.base_tables()
    metrics = QueryMetrics(
        tables_used=len(tables),
        records_scanned=meter.records_scanned,
        record_length_sum=sum(tables.values()),
        bytes_scanned=meter.bytes_scanned,
        wall_time=elapsed,
        rows_produced=result.record_count,
    )
    logger.debug(
        "plan over %s: %d records, %d bytes, %d rows in %.6fs",
        sorted(tables), metrics.records_scanned, metrics.bytes_scanned,
        metrics.rows_produced, elapsed,
    )
    return result, metrics
