"""
Run reports against either backend and compare their outputs.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from functools import lru_cache
from typing import Dict, List, Tuple

import pandas as pd

from ..engine.metrics import QueryMetrics
from ..engine.plan import run_metered
from ..engine.table import Database, Row, Table
from ..errors import ReportError
from ..modeler.warehouse import WarehouseSchema, derive_from_catalog
from .definitions import REPORTS, ReportDefinition

logger = logging.getLogger(__name__)

BACKENDS = ("oltp", "warehouse")
BACKEND_ALIASES = {"dw": "warehouse"}
RESULT_FORMATS = ("csv", "json")


@dataclass
class ReportResult:
    report_id: int
    backend: str
    rows: Table
    metrics: QueryMetrics

    @property
    def columns(self) -> Tuple[str, ...]:
        return self.rows.schema.field_names


@dataclass
class EquivalenceVerdict:
    """Outcome of comparing two result multisets; the lists hold differing rows."""

    report_id: int
    columns: Tuple[str, ...]
    only_oltp: List[Row] = field(default_factory=list)
    only_warehouse: List[Row] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.only_oltp and not self.only_warehouse

    def __bool__(self) -> bool:
        return self.equivalent


@lru_cache(maxsize=1)
def default_warehouse_schema() -> WarehouseSchema:
    return derive_from_catalog()


def get_report(report_id: int) -> ReportDefinition:
    if report_id not in REPORTS:
        raise ReportError(f"unknown report {report_id}; known: {sorted(REPORTS)}")
    return REPORTS[report_id]


def run_report(
    report_id: int,
    backend: str,
    db: Database,
    as_of: date | None = None,
    schema: WarehouseSchema | None = None,
) -> ReportResult:
    """
    Execute one report and meter it.

    Args:
        report_id: 1..5
        backend: "oltp" or "warehouse" ("dw" is accepted too)
        db: Database of the matching kind
        as_of: Warehouse only; evaluate against rows valid on that date
        schema: Warehouse schema (derived from the report catalog by default)

    Returns:
        ReportResult with the rows and their QueryMetrics
    """
    report = get_report(report_id)
    backend = BACKEND_ALIASES.get(backend, backend)
    if backend not in BACKENDS:
        raise ReportError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if db.kind != backend:
        raise ReportError(f"report {report_id} on {backend} needs a {backend} database, got {db.kind!r}")
    if backend == "oltp":
        if as_of is not None:
            raise ReportError("as_of applies to the warehouse backend only")
        plan = report.oltp_plan(db)
    else:
        plan = report.dw_plan(db, schema or default_warehouse_schema(), as_of)

    rows, metrics = run_metered(plan)
    logger.info(
        "report %d on %s: %d rows, %d bytes scanned, %.4fs",
        report_id, backend, metrics.rows_produced, metrics.bytes_scanned, metrics.wall_time,
    )
    return ReportResult(report_id, backend, rows, metrics)


def _projected(result: ReportResult, columns: Tuple[str, ...]) -> Counter:
    names = result.columns
    missing = [c for c in columns if c not in names]
    if missing:
        raise ReportError(f"report {result.report_id} on {result.backend} lacks columns {missing}")
    positions = [names.index(c) for c in columns]
    return Counter(tuple(row[p] for p in positions) for row in result.rows.rows)


def assert_equivalent(oltp: ReportResult, warehouse: ReportResult) -> EquivalenceVerdict:
    """Compare both backends' rows as multisets over the report's grain and measure."""
    if oltp.report_id != warehouse.report_id:
        raise ReportError(f"cannot compare report {oltp.report_id} with report {warehouse.report_id}")
    columns = get_report(oltp.report_id).columns
    left, right = _projected(oltp, columns), _projected(warehouse, columns)
    verdict = EquivalenceVerdict(
        oltp.report_id,
        columns,
        only_oltp=sorted((left - right).elements()),
        only_warehouse=sorted((right - left).elements()),
    )
    if not verdict.equivalent:
        logger.warning(
            "report %d differs: %d rows only in oltp, %d only in warehouse",
            oltp.report_id, len(verdict.only_oltp), len(verdict.only_warehouse),
        )
    return verdict


def result_frame(result: ReportResult) -> pd.DataFrame:
    return pd.DataFrame(list(result.rows.rows), columns=list(result.columns))


def render_result(result: ReportResult, fmt: str = "csv") -> str:
    """Report rows as CSV (header + rows) or a JSON array of records."""
    frame = result_frame(result)
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        return frame.to_json(orient="records", indent=2) + "\n"
    raise ReportError(f"unknown result format {fmt!r}; expected one of {RESULT_FORMATS}")


def run_all(oltp: Database, warehouse: Database, schema: WarehouseSchema | None = None) -> Dict[int, Tuple[ReportResult, ReportResult]]:
    """Every report on both backends."""
    return {
        report_id: (run_report(report_id, "oltp", oltp), run_report(report_id, "warehouse", warehouse, schema=schema))
        for report_id in sorted(REPORTS)
    }
