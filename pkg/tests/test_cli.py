import json

import pytest

from src.cli import EXIT_INTERNAL, EXIT_INVALID, EXIT_OK, main
from src.config import WAREHOUSE_FILENAME

SMALL = ["--seed", "4", "--students", "60", "--krs", "200", "--jadkul", "30"]


@pytest.fixture
def snapshots(tmp_path):
    """An initial snapshot and its evolved successor."""
    old, new = tmp_path / "old.snap", tmp_path / "new.snap"
    assert main(["gen", *SMALL, "--out", str(old)]) == EXIT_OK
    assert main(["gen", "--seed", "9", "--evolve", str(old), "--out", str(new)]) == EXIT_OK
    return old, new


@pytest.fixture
def loaded(tmp_path, snapshots):
    warehouse = tmp_path / "dw"
    old, _ = snapshots
    assert main(["etl", "--new", str(old), "--warehouse", str(warehouse)]) == EXIT_OK
    return warehouse


def test_gen_prints_summary(tmp_path, capsys):
    out = tmp_path / "db.snap"
    assert main(["gen", *SMALL, "--out", str(out)]) == EXIT_OK
    assert out.exists()
    assert "taken on 2011-02-01" in capsys.readouterr().out


def test_gen_is_deterministic(tmp_path):
    one, two = tmp_path / "one.snap", tmp_path / "two.snap"
    main(["gen", *SMALL, "--out", str(one)])
    main(["gen", *SMALL, "--out", str(two)])
    assert one.read_bytes() == two.read_bytes()


def test_paper_scale_rejects_overrides(tmp_path):
    assert main(["gen", "--scale", "paper", "--students", "5", "--out", str(tmp_path / "x.snap")]) == EXIT_INVALID


def test_custom_scale_matches_desk_with_overrides(tmp_path):
    custom, desk = tmp_path / "custom.snap", tmp_path / "desk.snap"
    assert main(["gen", "--scale", "custom", *SMALL, "--out", str(custom)]) == EXIT_OK
    assert main(["gen", "--scale", "desk", *SMALL, "--out", str(desk)]) == EXIT_OK
    assert custom.read_bytes() == desk.read_bytes()


def test_evolve_needs_later_date(tmp_path, snapshots):
    old, _ = snapshots
    code = main(["gen", "--evolve", str(old), "--taken-on", "2000-01-01", "--out", str(tmp_path / "bad.snap")])
    assert code == EXIT_INVALID


def test_bad_date_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["gen", "--taken-on", "yesterday", "--out", str(tmp_path / "x.snap")])
    assert excinfo.value.code == 2


def test_etl_first_and_incremental_load(tmp_path, snapshots, capsys):
    old, new = snapshots
    warehouse = tmp_path / "dw"
    assert main(["etl", "--new", str(old), "--warehouse", str(warehouse)]) == EXIT_OK
    assert (warehouse / WAREHOUSE_FILENAME).exists()
    capsys.readouterr()
    assert main(["etl", "--old", str(old), "--new", str(new), "--warehouse", str(warehouse), "--format", "json"]) == EXIT_OK
    stats = json.loads(capsys.readouterr().out)
    assert set(stats) == {"WPRODI", "WDATA1", "WAKTIF", "WIPS", "WGRADE", "WJADKUL"}
    assert stats["WDATA1"]["closed"] > 0


def test_etl_rejects_missing_snapshot(tmp_path):
    code = main(["etl", "--new", str(tmp_path / "absent.snap"), "--warehouse", str(tmp_path / "dw")])
    assert code == EXIT_INVALID


def test_incremental_etl_into_fresh_warehouse_rejected(tmp_path, snapshots):
    old, new = snapshots
    code = main(["etl", "--old", str(old), "--new", str(new), "--warehouse", str(tmp_path / "fresh")])
    assert code == EXIT_INVALID
    assert not (tmp_path / "fresh" / WAREHOUSE_FILENAME).exists()


def test_reports_agree_across_backends(tmp_path, snapshots, loaded, capsys):
    old, _ = snapshots
    capsys.readouterr()
    for report_id in ("1", "3", "5"):
        assert main(["report", "--id", report_id, "--backend", "oltp", "--db", str(old)]) == EXIT_OK
        from_oltp = capsys.readouterr().out
        assert main(["report", "--id", report_id, "--backend", "dw", "--warehouse", str(loaded)]) == EXIT_OK
        assert capsys.readouterr().out == from_oltp


def test_report_to_file(tmp_path, snapshots):
    old, _ = snapshots
    out = tmp_path / "r2.json"
    assert main(["report", "--id", "2", "--backend", "oltp", "--db", str(old), "--format", "json", "--out", str(out)]) == EXIT_OK
    rows = json.loads(out.read_text(encoding="utf-8"))
    assert rows and "jumlah" in rows[0]


def test_report_backend_needs_its_source(snapshots):
    old, _ = snapshots
    assert main(["report", "--id", "1", "--backend", "oltp"]) == EXIT_INVALID
    assert main(["report", "--id", "1", "--backend", "dw", "--db", str(old)]) == EXIT_INVALID
    assert main(["report", "--id", "1", "--backend", "oltp", "--db", str(old), "--as-of", "2011-02-01"]) == EXIT_INVALID


def test_unknown_report_id():
    with pytest.raises(SystemExit) as excinfo:
        main(["report", "--id", "7", "--backend", "oltp", "--db", "x"])
    assert excinfo.value.code == 2


def test_bench_markdown(capsys):
    assert main(["bench", *SMALL, "--repeats", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "## Per-report efficiency" in out
    assert "Mean efficiency over all defined cells" in out


def test_bench_json_sections(capsys):
    assert main(["bench", *SMALL, "--repeats", "1", "--format", "json"]) == EXIT_OK
    assert '"mean_efficiency"' in capsys.readouterr().out


def test_capacity(snapshots, loaded, capsys):
    old, _ = snapshots
    assert main(["capacity", "--db", str(old), "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "table,record_length,record_count,total_bytes"
    assert lines[-1].startswith("Total,1099,")
    assert main(["capacity", "--warehouse", str(loaded), "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["totals"]["record_length"] == 326


def test_capacity_needs_exactly_one_source(snapshots, loaded):
    old, _ = snapshots
    assert main(["capacity"]) == EXIT_INVALID
    assert main(["capacity", "--db", str(old), "--warehouse", str(loaded)]) == EXIT_INVALID


def test_derive(snapshots, capsys):
    old, _ = snapshots
    assert main(["derive"]) == EXIT_OK
    assert "## WPRODI (dimension, 35 bytes)" in capsys.readouterr().out
    assert main(["derive", "--threshold", "16", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["dimensions"] == []
    assert main(["derive", "--cardinalities-from", str(old), "--format", "json"]) == EXIT_OK
    names = [f["name"] for f in json.loads(capsys.readouterr().out)["facts"]]
    assert names == ["WDATA1", "WAKTIF", "WIPS", "WGRADE", "WJADKUL"]


def test_internal_errors_map_to_exit_one(monkeypatch, tmp_path):
    def explode(*_args, **_kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr("src.cli.generate", explode)
    assert main(["gen", "--out", str(tmp_path / "x.snap")]) == EXIT_INTERNAL
