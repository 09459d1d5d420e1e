"""
Efficiency percentages between the operational database and the warehouse.

Every comparison uses the percentage-increase rule

    (old - new) / new * 100

with the operational value as "old" and the warehouse value as "new".
"""

from dataclasses import asdict, dataclass, field
from statistics import fmean
from typing import Any, Dict, List, Mapping, Tuple

import pandas as pd

from ..engine.metrics import QueryMetrics
from ..engine.table import Database, table_stats
from ..errors import ReportError, UndefinedEfficiencyError

# Parameter → (QueryMetrics attribute, label)
PARAMETERS: Dict[str, Tuple[str, str]] = {
    "total_bytes": ("bytes_scanned", "Total bytes"),
    "records_managed": ("records_scanned", "Records managed"),
    "record_length": ("record_length_sum", "Record length"),
    "tables_used": ("tables_used", "Tables used"),
    "wall_time": ("wall_time", "Time (s)"),
    "rows_produced": ("rows_produced", "Rows produced"),
}

CAPACITY_COLUMNS = ("record_length", "record_count", "total_bytes")


def efficiency_pct(old_value: float, new_value: float) -> float:
    """
    Percentage increase of `old_value` over `new_value`.

    Raises:
        UndefinedEfficiencyError: new_value is not positive
    """
    if new_value <= 0:
        raise UndefinedEfficiencyError(f"efficiency undefined for new value {new_value}")
    return (old_value - new_value) / new_value * 100


def _maybe_pct(old_value: float, new_value: float) -> float | None:
    try:
        return efficiency_pct(old_value, new_value)
    except UndefinedEfficiencyError:
        return None


@dataclass(frozen=True)
class EfficiencyCell:
    report_id: int
    parameter: str
    oltp: float
    warehouse: float
    efficiency: float | None


@dataclass
class EfficiencyReport:
    """Six parameters per report on both backends, with their efficiency."""

    cells: List[EfficiencyCell] = field(default_factory=list)

    @property
    def report_ids(self) -> List[int]:
        return sorted({c.report_id for c in self.cells})

    def cell(self, report_id: int, parameter: str) -> EfficiencyCell:
        for c in self.cells:
            if c.report_id == report_id and c.parameter == parameter:
                return c
        raise KeyError((report_id, parameter))

    @property
    def mean_efficiency(self) -> float | None:
        """Plain mean over every defined efficiency cell."""
        values = [c.efficiency for c in self.cells if c.efficiency is not None]
        return fmean(values) if values else None

    def to_frame(self) -> pd.DataFrame:
        """
        Wide layout: one row per (parameter, side), one column per report.

        Sides are "oltp", "warehouse" and "efficiency_pct".
        """
        columns = [f"report_{i}" for i in self.report_ids]
        records = []
        for parameter, (_, label) in PARAMETERS.items():
            for side in ("oltp", "warehouse", "efficiency_pct"):
                record: Dict[str, Any] = {"parameter": label, "side": side}
                for report_id, column in zip(self.report_ids, columns):
                    c = self.cell(report_id, parameter)
                    record[column] = {"oltp": c.oltp, "warehouse": c.warehouse}.get(side, c.efficiency)
                records.append(record)
        return pd.DataFrame(records, columns=["parameter", "side", *columns])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cells": [asdict(c) for c in self.cells],
            "mean_efficiency": self.mean_efficiency,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "EfficiencyReport":
        return cls([EfficiencyCell(**c) for c in data["cells"]])


def _metrics(result: Any) -> QueryMetrics:
    return result if isinstance(result, QueryMetrics) else result.metrics


def comparison_report(oltp_results: Mapping[int, Any], dw_results: Mapping[int, Any]) -> EfficiencyReport:
    """
    Efficiency of every parameter of every report.

    Args:
        oltp_results: report id → QueryMetrics or ReportResult on the operational side
        dw_results: report id → QueryMetrics or ReportResult on the warehouse side

    Raises:
        ReportError: the two sides cover different reports
    """
    if set(oltp_results) != set(dw_results):
        raise ReportError(
            f"mismatched report sets: oltp {sorted(oltp_results)}, warehouse {sorted(dw_results)}"
        )
    cells = []
    for report_id in sorted(oltp_results):
        old, new = _metrics(oltp_results[report_id]), _metrics(dw_results[report_id])
        for parameter, (attribute, _) in PARAMETERS.items():
            a, b = getattr(old, attribute), getattr(new, attribute)
            cells.append(EfficiencyCell(report_id, parameter, a, b, _maybe_pct(a, b)))
    return EfficiencyReport(cells)


@dataclass(frozen=True)
class CapacityRow:
    table: str
    record_length: int
    record_count: int
    total_bytes: int


@dataclass
class CapacityReport:
    """Per-table sizes of one database plus a totals row."""

    kind: str
    rows: List[CapacityRow]

    @property
    def totals(self) -> CapacityRow:
        return CapacityRow(
            "Total",
            sum(r.record_length for r in self.rows),
            sum(r.record_count for r in self.rows),
            sum(r.total_bytes for r in self.rows),
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(r) for r in [*self.rows, self.totals]])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "tables": [asdict(r) for r in self.rows],
            "totals": asdict(self.totals),
        }


def capacity_report(db: Database) -> CapacityReport:
    rows = []
    for table in db:
        stats = table_stats(table)
        rows.append(CapacityRow(table.name, stats.record_length, stats.record_count, stats.total_bytes))
    return CapacityReport(db.kind, rows)


@dataclass
class CapacityComparison:
    """Totals of both databases and the efficiency of each column."""

    oltp: CapacityRow
    warehouse: CapacityRow

    def efficiency(self, column: str) -> float | None:
        return _maybe_pct(getattr(self.oltp, column), getattr(self.warehouse, column))

    def to_frame(self) -> pd.DataFrame:
        records = [
            {"variable": "oltp_total", **{c: getattr(self.oltp, c) for c in CAPACITY_COLUMNS}},
            {"variable": "warehouse_total", **{c: getattr(self.warehouse, c) for c in CAPACITY_COLUMNS}},
            {"variable": "efficiency_pct", **{c: self.efficiency(c) for c in CAPACITY_COLUMNS}},
        ]
        return pd.DataFrame(records, columns=["variable", *CAPACITY_COLUMNS])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "oltp": asdict(self.oltp),
            "warehouse": asdict(self.warehouse),
            "efficiency_pct": {c: self.efficiency(c) for c in CAPACITY_COLUMNS},
        }


def capacity_comparison(oltp: CapacityReport, warehouse: CapacityReport) -> CapacityComparison:
    return CapacityComparison(oltp.totals, warehouse.totals)

