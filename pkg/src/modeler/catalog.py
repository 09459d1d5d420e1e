"""
Declarative report catalog (TOML) and cardinality discovery.
"""

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from ..campus.schema import build_oltp_schema
from ..config import REPORT_CATALOG_PATH
from ..engine.schema import FieldKind, FieldSpec, TableSchema
from ..engine.table import Database
from ..errors import ModelError, SchemaError
from .hypercube import DimensionSpec, HypercubeSpec, MeasureSpec, ReportSpec, SnowflakeLink, hypercube_from_report

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReportCatalog:
    dimensions: Dict[str, DimensionSpec]
    reports: Tuple[ReportSpec, ...]

    def report(self, report_id: int) -> ReportSpec:
        for report in self.reports:
            if report.id == report_id:
                return report
        raise ModelError(f"catalog has no report {report_id}")

    def hypercubes(self) -> List[HypercubeSpec]:
        return [hypercube_from_report(r, self.dimensions) for r in self.reports]


def _resolve(ref: str, schemas: Mapping[str, TableSchema]) -> Tuple[str, FieldSpec]:
    table, _, name = ref.partition(".")
    if not name or table not in schemas:
        raise ModelError(f"cannot resolve attribute reference {ref!r}")
    try:
        return table, schemas[table].field(name)
    except SchemaError as exc:
        raise ModelError(f"cannot resolve attribute reference {ref!r}") from exc


def _attribute(entry: Any, schemas: Mapping[str, TableSchema]) -> Tuple[Optional[str], FieldSpec]:
    if isinstance(entry, str):
        return _resolve(entry, schemas)
    try:
        spec = FieldSpec(entry["name"], FieldKind(entry["kind"]), entry["width"], tuple(entry.get("values", ())))
    except (KeyError, TypeError, ValueError, SchemaError) as exc:
        raise ModelError(f"malformed derived attribute {entry!r}") from exc
    return None, spec


def _dimension(name: str, body: Mapping[str, Any], schemas: Mapping[str, TableSchema]) -> DimensionSpec:
    resolved = [_attribute(entry, schemas) for entry in body.get("attributes", [])]
    origins = tuple(origin for origin, _ in resolved)
    chain = tuple(
        SnowflakeLink(link["table"], tuple(link.get("attributes", ())), link.get("via"))
        for link in body.get("chain", [])
    )
    sources = tuple(dict.fromkeys([o for o in origins if o] + [link.table for link in chain]))
    return DimensionSpec(
        name=name,
        attributes=tuple(spec for _, spec in resolved),
        cardinality=body.get("cardinality"),
        sources=sources,
        display_only=bool(body.get("display_only", False)),
        table=body.get("table"),
        chain=chain,
        origins=origins,
    )


def _report(body: Mapping[str, Any], schemas: Mapping[str, TableSchema]) -> ReportSpec:
    try:
        measures = tuple(
            MeasureSpec(m["function"], m["alias"], int(m.get("width", 12)), m.get("field"))
            for m in body.get("measures", [])
        )
        return ReportSpec(
            id=int(body["id"]),
            fact=body["fact"],
            title=body.get("title", ""),
            group_by=tuple(body.get("group_by", ())),
            display=tuple(body.get("display", ())),
            details=tuple(_resolve(ref, schemas)[1] for ref in body.get("details", ())),
            measures=measures,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed report entry: {exc}") from exc


def parse_catalog(document: Mapping[str, Any], schemas: Mapping[str, TableSchema] | None = None) -> ReportCatalog:
    schemas = schemas or build_oltp_schema()
    dimensions = {
        name: _dimension(name, body, schemas)
        for name, body in document.get("dimensions", {}).items()
    }
    reports = tuple(_report(body, schemas) for body in document.get("reports", []))
    ids = [r.id for r in reports]
    if len(set(ids)) != len(ids):
        raise ModelError(f"duplicate report ids in catalog: {ids}")
    return ReportCatalog(dimensions, reports)


def load_catalog(path: str | Path = REPORT_CATALOG_PATH, schemas: Mapping[str, TableSchema] | None = None) -> ReportCatalog:
    """Read and resolve a TOML report catalog."""
    try:
        with open(path, "rb") as handle:
            document = tomllib.load(handle)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ModelError(f"cannot read report catalog {path}: {exc}") from exc
    catalog = parse_catalog(document, schemas)
    logger.debug("loaded %d reports, %d dimensions from %s", len(catalog.reports), len(catalog.dimensions), path)
    return catalog


def discover_cardinalities(catalog: ReportCatalog, database: Database) -> ReportCatalog:
    """
    Replace declared cardinalities by distinct-value counts of each
    dimension's key attribute in `database`.

    Derived dimensions keep their declared value.
    """
    dimensions = {}
    for name, dim in catalog.dimensions.items():
        origin = dim.origins[0] if dim.origins else None
        if origin is None or origin not in database:
            dimensions[name] = dim
            continue
        table = database[origin]
        position = table.schema.index_of(dim.key.name)
        distinct = len({row[position] for row in table.rows})
        dimensions[name] = replace(dim, cardinality=max(distinct, 1))
        logger.debug("dimension %s: %d distinct values in %s", name, distinct, origin)
    return ReportCatalog(dimensions, catalog.reports)
