"""
Report specifications and their hypercubes.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

from ..engine.schema import FieldSpec
from ..errors import ModelError


@dataclass(frozen=True)
class SnowflakeLink:
    """One member of a dimension chain; `via` is the head field pointing at its key."""

    table: str
    attributes: Tuple[str, ...]
    via: Optional[str] = None


@dataclass(frozen=True)
class DimensionSpec:
    """
    A report dimension.

    `origins` runs parallel to `attributes` and names the OLTP table each
    attribute comes from (None for derived values).
    """

    name: str
    attributes: Tuple[FieldSpec, ...]
    cardinality: Optional[int] = None
    sources: Tuple[str, ...] = ()
    display_only: bool = False
    table: Optional[str] = None
    chain: Tuple[SnowflakeLink, ...] = ()
    origins: Tuple[Optional[str], ...] = ()

    def __post_init__(self) -> None:
        if not self.attributes:
            raise ModelError(f"dimension {self.name!r} has no attributes")
        if self.cardinality is not None and self.cardinality < 1:
            raise ModelError(f"dimension {self.name!r}: cardinality must be >= 1")
        if not self.sources and self.is_sourced:
            raise ModelError(f"dimension {self.name!r} names source attributes but no source tables")

    @property
    def is_sourced(self) -> bool:
        return any(origin is not None for origin in self.origins)

    @property
    def key(self) -> FieldSpec:
        return self.attributes[0]

    @property
    def attribute_names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.attributes)


@dataclass(frozen=True)
class MeasureSpec:
    function: str
    alias: str
    width: int
    field: Optional[str] = None  # "TABLE.field" for count_distinct / sum


@dataclass(frozen=True)
class ReportSpec:
    """One management report as listed in the catalog."""

    id: int
    fact: str
    title: str
    group_by: Tuple[str, ...] = ()
    display: Tuple[str, ...] = ()
    details: Tuple[FieldSpec, ...] = ()
    measures: Tuple[MeasureSpec, ...] = ()


@dataclass(frozen=True)
class HypercubeSpec:
    report_name: str
    measures: Tuple[MeasureSpec, ...]
    dimensions: Tuple[DimensionSpec, ...]
    details: Tuple[FieldSpec, ...] = ()
    report_id: int = 0
    title: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        names = [d.name for d in self.dimensions]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ModelError(f"hypercube {self.report_name}: duplicate dimensions {duplicates}")

    @property
    def detail_listing(self) -> bool:
        return not self.measures

    def dimension(self, name: str) -> DimensionSpec:
        for dim in self.dimensions:
            if dim.name == name:
                return dim
        raise ModelError(f"hypercube {self.report_name} has no dimension {name!r}")


def hypercube_from_report(report: ReportSpec, dimensions: Dict[str, DimensionSpec]) -> HypercubeSpec:
    """
    Build the hypercube of one report: one dimension per grouping or
    display attribute, measures carried through.

    Display dimensions are marked display_only whatever the catalog says.
    """
    chosen = []
    for name in report.group_by + report.display:
        if name not in dimensions:
            raise ModelError(f"report {report.id} uses unknown dimension {name!r}")
        dim = dimensions[name]
        if name in report.display and not dim.display_only:
            dim = replace(dim, display_only=True)
        chosen.append(dim)
    return HypercubeSpec(
        report_name=report.fact,
        measures=report.measures,
        dimensions=tuple(chosen),
        details=report.details,
        report_id=report.id,
        title=report.title,
    )
