"""
Warehouse schema assembled from the star schemas of all reports.
"""

import logging
from dataclasses import dataclass
from datetime import date
from typing import Any, Dict, List, Sequence, Tuple

from ..config import DEFAULT_INLINE_THRESHOLD
from ..engine.schema import TableSchema
from ..engine.table import Database, Table
from ..errors import ModelError
from .catalog import ReportCatalog, load_catalog
from .star import StarSchema, eliminate_dimensions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WarehouseSchema:
    facts: Tuple[StarSchema, ...]
    shared_dims: Tuple[TableSchema, ...]

    @property
    def tables(self) -> Tuple[TableSchema, ...]:
        """Dimension tables first, then facts in report order."""
        return self.shared_dims + tuple(star.fact for star in self.facts)

    @property
    def table_names(self) -> Tuple[str, ...]:
        return tuple(t.name for t in self.tables)

    def table(self, name: str) -> TableSchema:
        for schema in self.tables:
            if schema.name == name:
                return schema
        raise ModelError(f"warehouse has no table {name!r}")

    def star(self, report_id: int) -> StarSchema:
        for star in self.facts:
            if star.report_id == report_id:
                return star
        raise ModelError(f"warehouse has no fact for report {report_id}")

    def sharing(self) -> Dict[str, List[str]]:
        """Dimension table → facts referencing it."""
        users: Dict[str, List[str]] = {d.name: [] for d in self.shared_dims}
        for star in self.facts:
            for _, table in star.references.values():
                users[table].append(star.fact.name)
        return users

    def to_dict(self) -> Dict[str, Any]:
        def layout(schema: TableSchema) -> Dict[str, Any]:
            return {
                "name": schema.name,
                "record_length": schema.record_length,
                "key": list(schema.primary_key),
                "fields": [
                    {"name": f.name, "kind": f.kind.value, "width": f.width}
                    for f in schema.fields
                ],
            }

        return {
            "dimensions": [layout(d) for d in self.shared_dims],
            "facts": [
                {
                    "report": star.report_id,
                    **layout(star.fact),
                    "references": {k: list(v) for k, v in star.references.items()},
                    "eliminated": {k: v.value for k, v in star.eliminated.items()},
                }
                for star in self.facts
            ],
        }

    def describe(self) -> str:
        """Markdown description of the derived warehouse."""
        lines = ["# Derived warehouse", ""]
        users = self.sharing()
        for dim in self.shared_dims:
            lines.append(f"## {dim.name} (dimension, {dim.record_length} bytes)")
            lines.append("")
            lines.append(f"Referenced by: {', '.join(users[dim.name]) or 'none'}")
            lines.append("")
            lines.extend(_field_lines(dim))
            lines.append("")
        for star in self.facts:
            fact = star.fact
            lines.append(f"## {fact.name} (fact of report {star.report_id}, {fact.record_length} bytes)")
            lines.append("")
            lines.append(f"Business key: {', '.join(fact.primary_key)}")
            for name, reason in star.eliminated.items():
                lines.append(f"- {name}: inlined ({reason.value})")
            for name, (column, table) in star.references.items():
                lines.append(f"- {name}: {column} → {table}")
            lines.append("")
            lines.extend(_field_lines(fact))
            lines.append("")
        return "\n".join(lines).rstrip() + "\n"


def _field_lines(schema: TableSchema) -> List[str]:
    lines = ["| field | kind | width |", "|---|---|---|"]
    lines += [f"| {f.name} | {f.kind.value} | {f.width} |" for f in schema.fields]
    return lines


def derive_warehouse(stars: Sequence[StarSchema]) -> WarehouseSchema:
    """
    Merge star schemas, sharing dimension tables that are structurally equal.

    Raises:
        ModelError: no star schemas, or two tables with one name and different fields
    """
    if not stars:
        raise ModelError("derive_warehouse needs at least one star schema")
    dims: Dict[str, TableSchema] = {}
    facts: Dict[str, TableSchema] = {}
    for star in stars:
        for dim in star.dims:
            known = dims.get(dim.name)
            if known is not None and known.fields != dim.fields:
                raise ModelError(f"dimension {dim.name} derived with two different layouts")
            dims.setdefault(dim.name, dim)
        if star.fact.name in facts:
            raise ModelError(f"fact table {star.fact.name} derived twice")
        facts[star.fact.name] = star.fact
    clash = set(dims) & set(facts)
    if clash:
        raise ModelError(f"table names used by both facts and dimensions: {sorted(clash)}")
    return WarehouseSchema(tuple(stars), tuple(dims.values()))


def derive_from_catalog(
    catalog: ReportCatalog | None = None,
    inline_threshold: int = DEFAULT_INLINE_THRESHOLD,
) -> WarehouseSchema:
    """Hypercube → elimination → warehouse for every report of a catalog."""
    catalog = catalog or load_catalog()
    stars = [eliminate_dimensions(hc, inline_threshold) for hc in catalog.hypercubes()]
    warehouse = derive_warehouse(stars)
    logger.info(
        "derived %d warehouse tables (%d dimension) at threshold %d",
        len(warehouse.tables), len(warehouse.shared_dims), inline_threshold,
    )
    return warehouse


def empty_warehouse(schema: WarehouseSchema, taken_on: date | None = None) -> Database:
    return Database("warehouse", (Table(t) for t in schema.tables), taken_on=taken_on)
