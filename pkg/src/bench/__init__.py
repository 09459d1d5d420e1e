# Efficiency metrics, capacity tables and the end-to-end benchmark
from .efficiency import (
    PARAMETERS,
    CapacityComparison,
    CapacityReport,
    CapacityRow,
    EfficiencyCell,
    EfficiencyReport,
    capacity_comparison,
    capacity_report,
    comparison_report,
    efficiency_pct,
)
from .harness import BenchmarkRun, run_benchmark, timed_report
from .published import published_comparison, published_metrics
from .render import format_pct, render

__all__ = [
    "PARAMETERS",
    "BenchmarkRun",
    "CapacityComparison",
    "CapacityReport",
    "CapacityRow",
    "EfficiencyCell",
    "EfficiencyReport",
    "capacity_comparison",
    "capacity_report",
    "comparison_report",
    "efficiency_pct",
    "format_pct",
    "published_comparison",
    "published_metrics",
    "render",
    "run_benchmark",
    "timed_report",
]
