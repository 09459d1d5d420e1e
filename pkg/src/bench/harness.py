"""
End-to-end benchmark: generate, derive, load, run every report on both
backends and compare.
"""

import logging
import statistics
from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

from ..campus.generator import GenConfig, generate
from ..config import DEFAULT_INLINE_THRESHOLD, DEFAULT_REPEATS
from ..engine.table import Database
from ..errors import ValidationError
from ..etl.merge import LoadStats
from ..etl.pipeline import run_etl
from ..modeler.warehouse import WarehouseSchema, derive_from_catalog, empty_warehouse
from ..reports.definitions import REPORTS
from ..reports.runner import EquivalenceVerdict, ReportResult, assert_equivalent, run_report
from .efficiency import (
    CapacityComparison,
    CapacityReport,
    EfficiencyReport,
    capacity_comparison,
    capacity_report,
    comparison_report,
)

logger = logging.getLogger(__name__)


@dataclass
class BenchmarkRun:
    config: GenConfig
    schema: WarehouseSchema
    oltp: Database
    warehouse: Database
    load: Dict[str, LoadStats]
    results: Dict[int, Tuple[ReportResult, ReportResult]] = field(default_factory=dict)
    verdicts: Dict[int, EquivalenceVerdict] = field(default_factory=dict)

    @property
    def oltp_capacity(self) -> CapacityReport:
        return capacity_report(self.oltp)

    @property
    def warehouse_capacity(self) -> CapacityReport:
        return capacity_report(self.warehouse)

    @property
    def capacity(self) -> CapacityComparison:
        return capacity_comparison(self.oltp_capacity, self.warehouse_capacity)

    @property
    def efficiency(self) -> EfficiencyReport:
        return comparison_report(
            {i: pair[0] for i, pair in self.results.items()},
            {i: pair[1] for i, pair in self.results.items()},
        )

    @property
    def all_equivalent(self) -> bool:
        return all(v.equivalent for v in self.verdicts.values())


def timed_report(report_id: int, backend: str, db: Database, repeats: int, schema: WarehouseSchema | None = None) -> ReportResult:
    """Run a report `repeats` times; keep the last rows with the median wall time."""
    if repeats < 1:
        raise ValidationError(f"repeats must be at least 1, got {repeats}")
    times = []
    result = None
    for _ in range(repeats):
        result = run_report(report_id, backend, db, schema=schema)
        times.append(result.metrics.wall_time)
    result.metrics = replace(result.metrics, wall_time=statistics.median(times))
    return result


def run_benchmark(
    config: GenConfig,
    repeats: int = DEFAULT_REPEATS,
    inline_threshold: int = DEFAULT_INLINE_THRESHOLD,
) -> BenchmarkRun:
    """
    Full pipeline for one generator configuration.

    Args:
        config: Generator parameters
        repeats: Executions per report and backend; the median time is kept
        inline_threshold: Cardinality at or below which dimensions are inlined

    Returns:
        BenchmarkRun with databases, load stats, results and verdicts
    """
    oltp = generate(config)
    schema = derive_from_catalog(inline_threshold=inline_threshold)
    warehouse = empty_warehouse(schema)
    load = run_etl(None, oltp, warehouse, schema)
    run = BenchmarkRun(config, schema, oltp, warehouse, load)

    for report_id in sorted(REPORTS):
        old = timed_report(report_id, "oltp", oltp, repeats)
        new = timed_report(report_id, "warehouse", warehouse, repeats, schema)
        run.results[report_id] = (old, new)
        run.verdicts[report_id] = assert_equivalent(old, new)

    logger.info(
        "benchmark seed %d: %d reports, all equivalent: %s",
        config.seed, len(run.results), run.all_equivalent,
    )
    return run
