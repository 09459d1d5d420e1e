# Management reports over the operational and warehouse backends
from .definitions import REPORTS, ReportDefinition, report_ids
from .runner import (
    EquivalenceVerdict,
    ReportResult,
    assert_equivalent,
    get_report,
    render_result,
    result_frame,
    run_all,
    run_report,
)

__all__ = [
    "REPORTS",
    "EquivalenceVerdict",
    "ReportDefinition",
    "ReportResult",
    "assert_equivalent",
    "get_report",
    "render_result",
    "report_ids",
    "result_frame",
    "run_all",
    "run_report",
]
