"""
Star schema derivation by dimension elimination.

Rules, in order; the first that applies inlines the dimension into the
fact table:

1. display_only      attributes are only shown, never grouped on
2. low_cardinality   domain size <= inline threshold
3. single_attribute  the dimension is just its key

Every other dimension becomes a dimension table, merging its snowflake
chain when it has one.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

from ..campus.schema import build_oltp_schema
from ..config import DEFAULT_INLINE_THRESHOLD
from ..engine.schema import FieldSpec, TableSchema, define_table, integer, validity_fields
from ..errors import ModelError
from .hypercube import DimensionSpec, HypercubeSpec, SnowflakeLink


class EliminationReason(str, Enum):
    DISPLAY_ONLY = "display_only"
    LOW_CARDINALITY = "low_cardinality"
    SINGLE_ATTRIBUTE = "single_attribute"


@dataclass(frozen=True)
class StarSchema:
    """
    Fact table plus retained dimension tables of one report.

    `references` maps each retained dimension to (fact field, dimension
    table); `eliminated` maps each inlined dimension to its reason.
    """

    fact: TableSchema
    dims: Tuple[TableSchema, ...]
    eliminated: Dict[str, EliminationReason]
    references: Dict[str, Tuple[str, str]]
    hypercube: HypercubeSpec

    @property
    def report_id(self) -> int:
        return self.hypercube.report_id

    @property
    def business_key(self) -> Tuple[str, ...]:
        return self.fact.primary_key

    @property
    def measures(self) -> Tuple[str, ...]:
        return tuple(m.alias for m in self.hypercube.measures)


def elimination_reason(dim: DimensionSpec, inline_threshold: int) -> EliminationReason | None:
    if dim.cardinality is None:
        raise ModelError(f"dimension {dim.name!r} has no cardinality metadata")
    if dim.display_only:
        return EliminationReason.DISPLAY_ONLY
    if dim.cardinality <= inline_threshold:
        return EliminationReason.LOW_CARDINALITY
    if len(dim.attributes) == 1:
        return EliminationReason.SINGLE_ATTRIBUTE
    return None


def merge_snowflake(
    chain: Sequence[SnowflakeLink],
    name: str,
    schemas: Mapping[str, TableSchema] | None = None,
) -> TableSchema:
    """
    Flatten a chain of normalized tables into one dimension table.

    The first link is the chain head; every later link names the head
    field (`via`) that references its single-field key.

    Args:
        chain: Head first, then linked tables
        name: Name of the flattened table
        schemas: Source table schemas (OLTP schema by default)

    Returns:
        Head key, head attributes, then each link's key and attributes,
        closed by tglmula/tglakhir
    """
    schemas = schemas or build_oltp_schema()
    if not chain:
        raise ModelError(f"{name}: empty snowflake chain")
    head_link = chain[0]
    if head_link.table not in schemas:
        raise ModelError(f"{name}: chain head {head_link.table!r} does not exist")
    head = schemas[head_link.table]
    if len(head.primary_key) != 1:
        raise ModelError(f"{name}: chain head {head.name} needs a single-field key")

    fields: List[FieldSpec] = [head.field(head.primary_key[0])]
    fields += [_member_field(head, attr, name) for attr in head_link.attributes]
    for link in chain[1:]:
        if link.table not in schemas:
            raise ModelError(f"{name}: broken chain, no table {link.table!r}")
        member = schemas[link.table]
        if not link.via or not head.has_field(link.via):
            raise ModelError(f"{name}: broken chain, {head.name} has no link field {link.via!r} to {member.name}")
        if member.primary_key != (link.via,):
            raise ModelError(f"{name}: broken chain, {head.name}.{link.via} is not the key of {member.name}")
        fields.append(head.field(link.via))
        fields += [_member_field(member, attr, name) for attr in link.attributes]

    names = [f.name for f in fields]
    if len(set(names)) != len(names):
        raise ModelError(f"{name}: chain yields duplicate attributes {names}")
    return define_table(name, fields + list(validity_fields()), primary_key=[fields[0].name], enforce_key=False)


def _member_field(schema: TableSchema, attr: str, name: str) -> FieldSpec:
    if not schema.has_field(attr):
        raise ModelError(f"{name}: {schema.name} has no attribute {attr!r}")
    return schema.field(attr)


def _dimension_table(dim: DimensionSpec, schemas: Mapping[str, TableSchema]) -> TableSchema:
    table_name = dim.table or f"W{dim.name.upper()}"
    if dim.chain:
        return merge_snowflake(dim.chain, table_name, schemas)
    return define_table(
        table_name,
        list(dim.attributes) + list(validity_fields()),
        primary_key=[dim.key.name],
        enforce_key=False,
    )


def eliminate_dimensions(
    hypercube: HypercubeSpec,
    inline_threshold: int = DEFAULT_INLINE_THRESHOLD,
    schemas: Mapping[str, TableSchema] | None = None,
) -> StarSchema:
    """
    Derive the star schema of one report.

    Fact fields come out as: dimension fields in hypercube order (inline
    attributes, or the key of a retained dimension), detail fields,
    measures, validity dates. The business key is every grain field
    except the non-key attributes of display-only dimensions.
    """
    schemas = schemas or build_oltp_schema()
    fields: List[FieldSpec] = []
    key: List[str] = []
    dims: List[TableSchema] = []
    eliminated: Dict[str, EliminationReason] = {}
    references: Dict[str, Tuple[str, str]] = {}

    for dim in hypercube.dimensions:
        reason = elimination_reason(dim, inline_threshold)
        if reason is None:
            table = _dimension_table(dim, schemas)
            dims.append(table)
            link = table.fields[0]
            references[dim.name] = (link.name, table.name)
            fields.append(link)
            key.append(link.name)
            continue
        eliminated[dim.name] = reason
        fields.extend(dim.attributes)
        if reason is EliminationReason.DISPLAY_ONLY:
            key.append(dim.key.name)
        else:
            key.extend(dim.attribute_names)

    for detail in hypercube.details:
        fields.append(detail)
        key.append(detail.name)
    for measure in hypercube.measures:
        if measure.function not in ("count", "count_distinct", "sum"):
            raise ModelError(f"{hypercube.report_name}: unknown measure {measure.function!r}")
        fields.append(integer(measure.alias, measure.width))

    names = [f.name for f in fields]
    clashes = sorted({n for n in names if names.count(n) > 1})
    if clashes:
        raise ModelError(f"{hypercube.report_name}: fact fields collide {clashes}")

    fact = define_table(
        hypercube.report_name,
        fields + list(validity_fields()),
        primary_key=key,
        enforce_key=False,
    )
    return StarSchema(fact, tuple(dims), eliminated, references, hypercube)
