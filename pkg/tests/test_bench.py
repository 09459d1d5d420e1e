import json
import re

import pytest

from src.bench import (
    CapacityComparison,
    CapacityRow,
    EfficiencyReport,
    capacity_comparison,
    capacity_report,
    comparison_report,
    efficiency_pct,
    format_pct,
    render,
    run_benchmark,
    timed_report,
)
from src.bench.published import (
    CAPACITY_EFFICIENCY,
    MEAN_EFFICIENCY,
    OLTP_CAPACITY,
    OLTP_TOTALS,
    REPORT_EFFICIENCY,
    WAREHOUSE_CAPACITY,
    WAREHOUSE_TOTALS,
    published_comparison,
    published_metrics,
)
from src.campus.generator import GenConfig
from src.engine.metrics import QueryMetrics
from src.errors import ReportError, UndefinedEfficiencyError, ValidationError
from src.reports import run_report


class TestEfficiency:
    def test_formula(self):
        assert efficiency_pct(300, 100) == 200
        assert efficiency_pct(100, 100) == 0
        assert efficiency_pct(50, 100) == -50

    @pytest.mark.parametrize("new", [0, -1])
    def test_undefined(self, new):
        with pytest.raises(UndefinedEfficiencyError):
            efficiency_pct(10, new)

    def test_capacity_headline(self):
        lengths, counts, total_bytes = OLTP_TOTALS
        dw_lengths, dw_counts, dw_bytes = WAREHOUSE_TOTALS
        assert round(efficiency_pct(lengths, dw_lengths), 2) == CAPACITY_EFFICIENCY[0]
        assert round(efficiency_pct(counts, dw_counts), 2) == CAPACITY_EFFICIENCY[1]
        assert round(efficiency_pct(total_bytes, dw_bytes), 2) == CAPACITY_EFFICIENCY[2]

    def test_printed_capacity_rows(self):
        assert sum(length for length, _ in OLTP_CAPACITY.values()) == OLTP_TOTALS[0]
        assert sum(n for _, n in OLTP_CAPACITY.values()) == OLTP_TOTALS[1]
        assert sum(length * n for length, n in OLTP_CAPACITY.values()) == OLTP_TOTALS[2]
        assert sum(length for length, _ in WAREHOUSE_CAPACITY.values()) == WAREHOUSE_TOTALS[0]
        assert sum(n for _, n in WAREHOUSE_CAPACITY.values()) == WAREHOUSE_TOTALS[1]
        assert sum(length * n for length, n in WAREHOUSE_CAPACITY.values()) == 72_115

    def test_printed_report_cells(self):
        report = published_comparison()
        for parameter, printed in REPORT_EFFICIENCY.items():
            for report_id, value in enumerate(printed, start=1):
                cell = report.cell(report_id, parameter)
                assert cell.efficiency == pytest.approx(value, abs=0.006), (parameter, report_id)

    def test_mean_of_printed_cells(self):
        mean = published_comparison().mean_efficiency
        assert mean == pytest.approx(489_235.82, abs=0.01)
        assert mean != pytest.approx(MEAN_EFFICIENCY)

    def test_undefined_cells_left_out_of_mean(self):
        oltp = {1: QueryMetrics(2, 10, 20, 100, 1.0, 4)}
        warehouse = {1: QueryMetrics(1, 5, 10, 50, 0.0, 4)}
        report = comparison_report(oltp, warehouse)
        assert report.cell(1, "wall_time").efficiency is None
        assert report.cell(1, "rows_produced").efficiency == 0
        assert report.mean_efficiency == pytest.approx((100 + 100 + 100 + 100 + 0) / 5)

    def test_mismatched_reports(self):
        oltp, warehouse = published_metrics()
        del warehouse[5]
        with pytest.raises(ReportError):
            comparison_report(oltp, warehouse)

    def test_wide_frame(self):
        frame = published_comparison().to_frame()
        assert list(frame.columns) == ["parameter", "side", "report_1", "report_2", "report_3", "report_4", "report_5"]
        assert len(frame) == 18
        tables = frame[(frame["parameter"] == "Tables used") & (frame["side"] == "efficiency_pct")]
        assert tables["report_5"].tolist() == [300.0]

    def test_dict_round_trip(self):
        report = published_comparison()
        again = EfficiencyReport.from_dict(json.loads(json.dumps(report.to_dict())))
        assert again.cells == report.cells


class TestCapacity:
    def test_desk_capacity(self, desk_db):
        report = capacity_report(desk_db)
        assert [row.table for row in report.rows] == list(desk_db.names)
        assert report.totals.record_length == 1_099
        assert report.totals.total_bytes == sum(t.total_bytes for t in desk_db)
        frame = report.to_frame()
        assert frame.iloc[-1]["table"] == "Total"

    def test_comparison(self, desk_db, desk_warehouse):
        comparison = capacity_comparison(capacity_report(desk_db), capacity_report(desk_warehouse))
        assert comparison.warehouse.record_length == 326
        assert comparison.efficiency("record_length") == pytest.approx(237.116, abs=0.001)
        assert list(comparison.to_frame()["variable"]) == ["oltp_total", "warehouse_total", "efficiency_pct"]

    def test_empty_warehouse_has_undefined_efficiency(self):
        result = CapacityComparison(CapacityRow("Total", 10, 5, 50), CapacityRow("Total", 5, 0, 0))
        assert result.efficiency("record_count") is None
        assert result.to_dict()["efficiency_pct"]["record_length"] == 100


class TestRender:
    def test_markdown(self):
        text = render(published_comparison(), "markdown")
        assert "| parameter" in text
        assert "300.00" in text

    def test_csv_two_decimals(self, desk_db):
        text = render(capacity_report(desk_db), "csv")
        assert text.splitlines()[0] == "table,record_length,record_count,total_bytes"
        assert text.endswith("\n")

    def test_json(self, desk_db):
        data = json.loads(render(capacity_report(desk_db), "json"))
        assert data["kind"] == "oltp"
        assert data["totals"]["record_length"] == 1_099

    def test_times_shown_at_display_floor(self):
        oltp = {1: QueryMetrics(4, 100, 700, 70_000, 3.13, 10)}
        warehouse = {1: QueryMetrics(2, 10, 70, 700, 0.0004, 10)}
        report = comparison_report(oltp, warehouse)
        lines = render(report, "csv").splitlines()
        assert "Time (s),warehouse,0.01" in lines
        assert "Time (s),oltp,3.13" in lines
        assert re.search(r"\| Time \(s\)\s*\| warehouse\s*\|\s*0\.01\s*\|", render(report, "markdown"))
        cells = json.loads(render(report, "json"))["cells"]
        assert any(c["warehouse"] == 0.0004 for c in cells)
        assert report.cell(1, "wall_time").warehouse == 0.0004

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            render(published_comparison(), "html")

    def test_format_pct(self):
        assert format_pct(None) == "n/a"
        assert format_pct(12.345) == "12.35%"


class TestHarness:
    def test_desk_benchmark(self):
        run = run_benchmark(GenConfig.preset("desk", seed=3, n_students=60, n_krs=200, n_jadkul=30), repeats=1)
        assert run.all_equivalent
        assert sorted(run.results) == [1, 2, 3, 4, 5]
        assert run.capacity.warehouse.record_length == 326
        report = run.efficiency
        assert report.cell(1, "tables_used").efficiency == 100
        assert report.cell(5, "record_length").efficiency == pytest.approx((373 - 127) / 127 * 100)

    def test_repeats_must_be_positive(self, desk_db):
        with pytest.raises(ValidationError):
            timed_report(1, "oltp", desk_db, 0)

    def test_median_time_kept(self, desk_db):
        result = timed_report(1, "oltp", desk_db, 3)
        assert result.metrics.wall_time >= 0
        assert result.metrics.rows_produced == run_report(1, "oltp", desk_db).metrics.rows_produced


@pytest.mark.paper
class TestPaperScale:
    def test_warehouse_capacity(self, paper_warehouse):
        totals = capacity_report(paper_warehouse).totals
        assert (totals.record_length, totals.record_count, totals.total_bytes) == (326, 1_138, 72_115)
        sizes = {row.table: (row.record_length, row.record_count) for row in capacity_report(paper_warehouse).rows}
        assert sizes == WAREHOUSE_CAPACITY

    def test_operational_capacity(self, paper_db):
        totals = capacity_report(paper_db).totals
        assert (totals.record_length, totals.record_count, totals.total_bytes) == OLTP_TOTALS

    def test_capacity_efficiency(self, paper_db, paper_warehouse):
        comparison = capacity_comparison(capacity_report(paper_db), capacity_report(paper_warehouse))
        assert round(comparison.efficiency("record_length"), 2) == CAPACITY_EFFICIENCY[0]
        assert round(comparison.efficiency("record_count"), 2) == CAPACITY_EFFICIENCY[1]
