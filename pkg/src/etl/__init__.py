# Extraction, transformation and constructive-merge loading
from .ips import IpsCategory, classify_ips
from .merge import LoadStats, constructive_merge, current_view, valid_at
from .pipeline import full_restage, load_warehouse, render_load_report, run_etl, save_warehouse
from .transform import extract_transform

__all__ = [
    "IpsCategory",
    "LoadStats",
    "classify_ips",
    "constructive_merge",
    "current_view",
    "extract_transform",
    "full_restage",
    "load_warehouse",
    "render_load_report",
    "run_etl",
    "save_warehouse",
    "valid_at",
]
