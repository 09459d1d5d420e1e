"""
Configuration constants for the campus warehouse toolkit.
"""

from datetime import date
from pathlib import Path

# Application metadata
APP_TITLE = "Campus Warehouse Bench 🏛️"
APP_ICON = "🏛️"
APP_TAGLINE = "Derive a star schema from five management reports and measure what it saves."

# Storage layout
DATE_WIDTH = 8  # YYYYMMDD
OPEN_DATE = date(9999, 12, 31)
VALID_FROM = "tglmula"
VALID_TO = "tglakhir"
PADDING_FIELD = "padding"

# Snapshot files
SNAPSHOT_VERSION = "v1"
WAREHOUSE_FILENAME = "warehouse.snap"

# Star derivation
DEFAULT_INLINE_THRESHOLD = 8
REPORT_CATALOG_PATH = Path(__file__).parent / "modeler" / "specs" / "paper_reports.toml"

# Grading
NO_EXAM_GRADE = "-"
GRADES = ("A", "B", "C", "D", "E", NO_EXAM_GRADE)
GRADE_POINTS = {"A": 4, "B": 3, "C": 2, "D": 1, "E": 0}
IPS_LOW_BOUND = "2.5"  # below: K
IPS_HIGH_BOUND = "3.0"  # above: B, both bounds inclusive in C

# Enumerated domains
GENDERS = ("P", "W")
SEMESTERS = ("Ganjil", "Genap")
DAYS = ("Senin", "Selasa", "Rabu", "Kamis", "Jumat", "Sabtu")
JENJANG_ROWS = (
    ("30", "D3", "Diploma Tiga"),
    ("50", "S1", "Strata Satu"),
    ("60", "S2", "Strata Dua"),  # reserve, never assigned to a prodi
)
ACTIVE_JENJANG = ("50", "30")

# Scale presets for data generation
SCALE_PRESETS = {
    "paper": {
        "description": "Counts of the published campus database",
        "n_students": 42_977,
        "n_prodi": 16,
        "n_fakultas": 7,
        "n_krs": 84_774,
        "n_jadkul": 1_988,
        "n_dosen": 386,
        "n_matkul": 1_020,
        "years": (2002, 2010),
        "paper_scale": True,
    },
    "desk": {
        "description": "Small random campus for quick checks",
        "n_students": 300,
        "n_prodi": 16,
        "n_fakultas": 7,
        "n_krs": 1_500,
        "n_jadkul": 120,
        "n_dosen": 40,
        "n_matkul": 100,
        "years": (2006, 2010),
        "paper_scale": False,
    },
}

# Paper-scale warehouse cell quotas (distinct grain cells per fact)
PAPER_FACT_QUOTAS = {
    "WDATA1": 279,
    "WAKTIF": 74,
    "WIPS": 98,
    "WGRADE": 368,
    "WJADKUL": 303,
}

# Benchmark settings
DEFAULT_REPEATS = 3
TIME_DISPLAY_FLOOR = 0.01  # seconds, presentation only

# Logging
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Dashboard themes
DEFAULT_THEME = "light"

THEMES = {
    "light": {
        "name": "Light",
        "icon": "☀️",
        "bg_primary": "#ffffff",
        "bg_secondary": "#f8fafc",
        "text_primary": "#1a202c",
        "text_muted": "#718096",
        "border": "#e2e8f0",
        "accent": "#2563eb",
        "accent_dark": "#1e3a8a",
        "success": "#10b981",
        "error": "#ef4444",
    },
    "dark": {
        "name": "Dark",
        "icon": "🌙",
        "bg_primary": "#0f172a",
        "bg_secondary": "#1e293b",
        "text_primary": "#f1f5f9",
        "text_muted": "#94a3b8",
        "border": "#475569",
        "accent": "#60a5fa",
        "accent_dark": "#93c5fd",
        "success": "#34d399",
        "error": "#f87171",
    },
}
