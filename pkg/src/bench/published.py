"""
Figures printed for the original campus database and its warehouse.

They serve as golden inputs: feeding the printed per-report values to
`comparison_report` must give back the printed efficiency cells.
"""

from typing import Dict, Tuple

from ..engine.metrics import QueryMetrics
from .efficiency import EfficiencyReport, comparison_report

# Table → (record length, record count)
OLTP_CAPACITY: Dict[str, Tuple[int, int]] = {
    "MMAHASISWA": (586, 42_977),
    "MPRODI": (48, 16),
    "MFAKULTAS": (65, 7),
    "MJENJANG": (24, 3),
    "TRKRS": (68, 84_774),
    "TJADKUL": (88, 1_988),
    "TDOSFAK": (73, 386),
    "MTBMTKL": (147, 1_020),
}

WAREHOUSE_CAPACITY: Dict[str, Tuple[int, int]] = {
    "WPRODI": (35, 16),
    "WJADKUL": (127, 303),
    "WGRADE": (44, 368),
    "WDATA1": (34, 279),
    "WAKTIF": (43, 74),
    "WIPS": (43, 98),
}

# (record length, record count, total bytes) as printed
OLTP_TOTALS = (1_099, 131_171, 31_303_511)
WAREHOUSE_TOTALS = (326, 1_138, 71_555)  # the rows above sum to 72,115 bytes

CAPACITY_EFFICIENCY = (237.12, 11_426.45, 43_647.48)

# Per report 1..5: parameter → (oltp values, warehouse values)
REPORT_METRICS: Dict[str, Tuple[Tuple[float, ...], Tuple[float, ...]]] = {
    "bytes_scanned": (
        (25_185_855, 30_255_131, 5_040_609, 30_225_131, 352_023),
        (10_046, 3_742, 4_774, 16_752, 38_481),
    ),
    "records_scanned": (
        (43_004, 117_111, 74_134, 117_111, 3_384),
        (295, 90, 114, 384, 303),
    ),
    "record_length_sum": (
        (723, 791, 205, 791, 373),
        (69, 78, 78, 79, 127),
    ),
    "tables_used": (
        (4, 5, 4, 5, 4),
        (2, 2, 2, 2, 1),
    ),
    "wall_time": (
        (3.13, 245.61, 439.68, 500.83, 119.15),
        (0.01, 0.01, 0.01, 0.01, 0.01),
    ),
    "rows_produced": (
        (279, 74, 3_091, 368, 592),
        (279, 74, 98, 368, 303),
    ),
}

# Parameter → printed efficiency per report 1..5
REPORT_EFFICIENCY: Dict[str, Tuple[float, ...]] = {
    "total_bytes": (250_605.31, 808_428.35, 105_484.60, 180_327.00, 814.80),
    "records_managed": (14_477.63, 130_023.33, 64_929.82, 30_397.66, 1_016.83),
    "record_length": (947.83, 914.10, 162.82, 901.27, 193.70),
    "tables_used": (100.00, 150.00, 100.00, 150.00, 300.00),
    "wall_time": (31_200.00, 2_456_000.00, 4_396_700.00, 5_008_200.00, 1_191_400.00),
    "rows_produced": (0.00, 0.00, 3_054.08, 0.00, 95.38),
}

# Printed headline mean; the plain mean of the 30 cells above is 489,235.82
MEAN_EFFICIENCY = 461_801.84


def published_metrics() -> Tuple[Dict[int, QueryMetrics], Dict[int, QueryMetrics]]:
    """Printed per-report values as (oltp, warehouse) QueryMetrics by report id."""
    sides = []
    for side in (0, 1):
        sides.append({
            report_id: QueryMetrics(**{attr: values[side][report_id - 1] for attr, values in REPORT_METRICS.items()})
            for report_id in range(1, 6)
        })
    return sides[0], sides[1]


def published_comparison() -> EfficiencyReport:
    oltp, warehouse = published_metrics()
    return comparison_report(oltp, warehouse)
