"""
Command line for the campus warehouse toolkit.

    python -m src.cli gen --seed 42 --scale desk --out old.snap
    python -m src.cli gen --seed 7 --evolve old.snap --out new.snap
    python -m src.cli etl --new old.snap --warehouse dw/
    python -m src.cli etl --old old.snap --new new.snap --warehouse dw/
    python -m src.cli report --id 1 --backend dw --warehouse dw/ --format csv
    python -m src.cli bench --seed 42 --scale desk --format markdown
    python -m src.cli capacity --db old.snap
    python -m src.cli derive --threshold 8

Exit codes: 0 success, 2 invalid input, 1 internal error.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from datetime import date, timedelta
from pathlib import Path
from typing import Sequence

from .bench.efficiency import capacity_report
from .bench.harness import run_benchmark
from .bench.published import MEAN_EFFICIENCY, WAREHOUSE_TOTALS
from .bench.render import RENDER_FORMATS, format_pct, render
from .campus.generator import GenConfig, evolve_database, generate
from .campus.snapshot import load_snapshot, snapshot
from .config import DEFAULT_INLINE_THRESHOLD, DEFAULT_REPEATS, LOG_FORMAT, SCALE_PRESETS
from .errors import ValidationError
from .etl.pipeline import load_warehouse, render_load_report, run_etl, save_warehouse
from .modeler.catalog import discover_cardinalities, load_catalog
from .modeler.warehouse import derive_from_catalog
from .reports.runner import RESULT_FORMATS, render_result, run_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2

# "custom" is the desk preset with --students/--krs/--jadkul overrides
CUSTOM_BASE = "desk"
SCALE_CHOICES = (*sorted(SCALE_PRESETS), "custom")


def _iso_date(value: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not a YYYY-MM-DD date") from None


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return number


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8", newline="\n")
    logger.info("wrote %s", out)


def _config(args: argparse.Namespace) -> GenConfig:
    overrides = {
        key: value
        for key, value in (
            ("n_students", args.students),
            ("n_krs", args.krs),
            ("n_jadkul", args.jadkul),
        )
        if value is not None
    }
    preset = CUSTOM_BASE if args.scale == "custom" else args.scale
    if overrides and SCALE_PRESETS[preset]["paper_scale"]:
        raise ValidationError("the paper preset has fixed counts; use --scale custom for other sizes")
    return GenConfig.preset(preset, seed=args.seed, **overrides)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.evolve:
        base = load_snapshot(args.evolve)
        taken_on = args.taken_on or (base.taken_on or date.today()) + timedelta(days=182)
        db = evolve_database(base, args.seed, taken_on, args.churn)
    else:
        config = _config(args)
        if args.taken_on:
            config = replace(config, taken_on=args.taken_on)
        db = generate(config)
    path = snapshot(db, args.out)
    print(f"{path}: {db.total_records} records, taken on {db.taken_on}, config {db.config_hash}")
    return EXIT_OK


def cmd_etl(args: argparse.Namespace) -> int:
    schema = derive_from_catalog(inline_threshold=args.threshold)
    old = load_snapshot(args.old) if args.old else None
    new = load_snapshot(args.new)
    warehouse = load_warehouse(args.warehouse, schema)
    stats = run_etl(old, new, warehouse, schema)
    save_warehouse(warehouse, args.warehouse)
    _emit(render_load_report(stats, args.format), args.out)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    schema = derive_from_catalog(inline_threshold=args.threshold)
    if args.backend == "oltp":
        if not args.db:
            raise ValidationError("--backend oltp needs --db SNAPSHOT")
        db = load_snapshot(args.db)
    else:
        if not args.warehouse:
            raise ValidationError("--backend dw needs --warehouse DIR")
        db = load_warehouse(args.warehouse, schema)
    result = run_report(args.id, args.backend, db, as_of=args.as_of, schema=schema)
    _emit(render_result(result, args.format), args.out)
    metrics = result.metrics
    logger.info(
        "tables %d, records %d, record length %d, bytes %d, rows %d",
        metrics.tables_used, metrics.records_scanned, metrics.record_length_sum,
        metrics.bytes_scanned, metrics.rows_produced,
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    run = run_benchmark(_config(args), repeats=args.repeats, inline_threshold=args.threshold)
    sections = [
        ("Operational database capacity", run.oltp_capacity),
        ("Warehouse capacity", run.warehouse_capacity),
        ("Capacity comparison", run.capacity),
        ("Per-report efficiency", run.efficiency),
    ]
    if args.format == "markdown":
        parts = [f"## {title}\n\n{render(table, 'markdown')}" for title, table in sections]
        warehouse_bytes = run.warehouse_capacity.totals.total_bytes
        notes = [
            f"Mean efficiency over all defined cells: {format_pct(run.efficiency.mean_efficiency)} "
            f"(published headline: {format_pct(MEAN_EFFICIENCY)}).",
            f"Warehouse bytes: {warehouse_bytes} (published total: {WAREHOUSE_TOTALS[2]}).",
        ]
        text = "\n".join(parts) + "\n" + "\n".join(notes) + "\n"
    else:
        text = "".join(render(table, args.format) for _, table in sections)
    _emit(text, args.out)

    failed = sorted(i for i, verdict in run.verdicts.items() if not verdict.equivalent)
    if failed:
        logger.error("reports %s differ between backends", failed)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_capacity(args: argparse.Namespace) -> int:
    if bool(args.db) == bool(args.warehouse):
        raise ValidationError("give exactly one of --db SNAPSHOT or --warehouse DIR")
    if args.db:
        db = load_snapshot(args.db)
    else:
        db = load_warehouse(args.warehouse, derive_from_catalog(inline_threshold=args.threshold))
    _emit(render(capacity_report(db), args.format), args.out)
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    catalog = load_catalog()
    if args.cardinalities_from:
        catalog = discover_cardinalities(catalog, load_snapshot(args.cardinalities_from))
    schema = derive_from_catalog(catalog, inline_threshold=args.threshold)
    if args.format == "json":
        text = json.dumps(schema.to_dict(), indent=2) + "\n"
    else:
        text = schema.describe()
    _emit(text, args.out)
    return EXIT_OK


def _scale_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="Generator seed (default: 0)")
    parser.add_argument(
        "--scale", choices=SCALE_CHOICES, default="desk",
        help="Size preset (default: desk); custom starts from desk and takes the overrides below",
    )
    parser.add_argument("--students", type=int, help="Override the preset's student count")
    parser.add_argument("--krs", type=int, help="Override the preset's enrollment count")
    parser.add_argument("--jadkul", type=int, help="Override the preset's schedule count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="campus-dw", description="Campus data warehouse toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Write output here instead of stdout")
    common.add_argument(
        "--threshold", type=int, default=DEFAULT_INLINE_THRESHOLD,
        help=f"Inline dimensions with at most this many values (default: {DEFAULT_INLINE_THRESHOLD})",
    )

    gen = subparsers.add_parser("gen", help="Generate or evolve an OLTP snapshot")
    _scale_arguments(gen)
    gen.add_argument("--out", type=Path, required=True, help="Snapshot file to write")
    gen.add_argument("--evolve", type=Path, metavar="FROM", help="Derive the next snapshot from FROM")
    gen.add_argument("--taken-on", type=_iso_date, help="Snapshot date (YYYY-MM-DD)")
    gen.add_argument("--churn", type=float, default=0.02, help="Share of students touched by --evolve")
    gen.set_defaults(handler=cmd_gen)

    etl = subparsers.add_parser("etl", parents=[common], help="Load a snapshot into the warehouse")
    etl.add_argument("--old", type=Path, help="Previous snapshot (omit for a first load)")
    etl.add_argument("--new", type=Path, required=True, help="Current snapshot")
    etl.add_argument("--warehouse", type=Path, required=True, help="Warehouse directory")
    etl.add_argument("--format", choices=("text", "json"), default="text")
    etl.set_defaults(handler=cmd_etl)

    report = subparsers.add_parser("report", parents=[common], help="Run one report")
    report.add_argument("--id", type=int, required=True, choices=range(1, 6), metavar="{1..5}")
    report.add_argument("--backend", choices=("oltp", "dw"), required=True)
    report.add_argument("--db", type=Path, help="OLTP snapshot (backend oltp)")
    report.add_argument("--warehouse", type=Path, help="Warehouse directory (backend dw)")
    report.add_argument("--as-of", type=_iso_date, help="Warehouse rows valid on this date")
    report.add_argument("--format", choices=RESULT_FORMATS, default="csv")
    report.set_defaults(handler=cmd_report)

    bench = subparsers.add_parser("bench", parents=[common], help="Run the full pipeline and compare backends")
    _scale_arguments(bench)
    bench.add_argument("--repeats", type=_positive, default=DEFAULT_REPEATS, help="Runs per report; median time is kept")
    bench.add_argument("--format", choices=RENDER_FORMATS, default="markdown")
    bench.set_defaults(handler=cmd_bench)

    capacity = subparsers.add_parser("capacity", parents=[common], help="Per-table sizes of a database")
    capacity.add_argument("--db", type=Path, help="OLTP snapshot")
    capacity.add_argument("--warehouse", type=Path, help="Warehouse directory")
    capacity.add_argument("--format", choices=RENDER_FORMATS, default="markdown")
    capacity.set_defaults(handler=cmd_capacity)

    derive = subparsers.add_parser("derive", parents=[common], help="Derive the warehouse schema")
    derive.add_argument("--cardinalities-from", type=Path, metavar="SNAPSHOT", help="Count cardinalities in a snapshot")
    derive.add_argument("--format", choices=("markdown", "json"), default="markdown")
    derive.set_defaults(handler=cmd_derive)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except ValidationError as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except Exception:
        logger.debug("internal error", exc_info=True)
        logger.error("internal error; rerun with -v for the traceback")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
