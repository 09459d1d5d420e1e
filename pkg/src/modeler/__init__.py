# Report hypercubes, dimension elimination and warehouse derivation
from .catalog import ReportCatalog, discover_cardinalities, load_catalog, parse_catalog
from .hypercube import DimensionSpec, HypercubeSpec, MeasureSpec, ReportSpec, SnowflakeLink, hypercube_from_report
from .star import EliminationReason, StarSchema, eliminate_dimensions, merge_snowflake
from .warehouse import WarehouseSchema, derive_from_catalog, derive_warehouse, empty_warehouse

__all__ = [
    "DimensionSpec",
    "EliminationReason",
    "HypercubeSpec",
    "MeasureSpec",
    "ReportCatalog",
    "ReportSpec",
    "SnowflakeLink",
    "StarSchema",
    "WarehouseSchema",
    "derive_from_catalog",
    "derive_warehouse",
    "discover_cardinalities",
    "eliminate_dimensions",
    "empty_warehouse",
    "hypercube_from_report",
    "load_catalog",
    "merge_snowflake",
    "parse_catalog",
]
