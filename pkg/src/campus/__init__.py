# Campus OLTP schema, data generation and snapshots
from .generator import GenConfig, check_referential, evolve_database, generate, make_nim, parse_nim
from .grading import NO_IPS, compute_ips, ips_from_totals
from .schema import OLTP_TABLES, build_oltp_schema
from .snapshot import load_snapshot, snapshot

__all__ = [
    "GenConfig",
    "NO_IPS",
    "OLTP_TABLES",
    "build_oltp_schema",
    "check_referential",
    "compute_ips",
    "evolve_database",
    "generate",
    "ips_from_totals",
    "load_snapshot",
    "make_nim",
    "parse_nim",
    "snapshot",
]
