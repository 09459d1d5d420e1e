"""
Fixed-width field and table definitions.

Every table has a record length equal to the sum of its field widths; that
length is the unit of all capacity accounting.
"""

from dataclasses import dataclass, field
from datetime import date, datetime
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Any, Iterable, List, Sequence, Tuple

from ..config import DATE_WIDTH, OPEN_DATE, VALID_FROM, VALID_TO
from ..errors import RowError, SchemaError


class FieldKind(str, Enum):
    TEXT = "text"
    INTEGER = "integer"
    DECIMAL = "decimal"
    DATE = "date"
    ENUM = "enum"


NUMERIC_KINDS = (FieldKind.INTEGER, FieldKind.DECIMAL)

# Kinds that can be compared by an equi-join
_JOIN_FAMILIES = {
    FieldKind.TEXT: "string",
    FieldKind.ENUM: "string",
    FieldKind.INTEGER: "number",
    FieldKind.DECIMAL: "number",
    FieldKind.DATE: "date",
}


def join_compatible(left: FieldKind, right: FieldKind) -> bool:
    """True when values of the two kinds may be matched by equality."""
    return _JOIN_FAMILIES[left] == _JOIN_FAMILIES[right]


@dataclass(frozen=True)
class FieldSpec:
    """One fixed-width column. `values` is the closed domain of an enum field."""

    name: str
    kind: FieldKind
    width: int
    values: Tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.name or not isinstance(self.name, str):
            raise SchemaError("field name must be a non-empty string")
        object.__setattr__(self, "kind", FieldKind(self.kind))
        object.__setattr__(self, "values", tuple(self.values))
        if not isinstance(self.width, int) or self.width < 1:
            raise SchemaError(f"field {self.name!r}: width must be >= 1, got {self.width!r}")
        if self.kind is FieldKind.ENUM:
            if not self.values:
                raise SchemaError(f"enum field {self.name!r} needs a closed value set")
            too_wide = [v for v in self.values if len(v.encode("utf-8")) > self.width]
            if too_wide:
                raise SchemaError(f"enum field {self.name!r}: values {too_wide} exceed width {self.width}")
        elif self.values:
            raise SchemaError(f"field {self.name!r}: only enum fields carry a value set")
        if self.kind is FieldKind.DATE and self.width != DATE_WIDTH:
            raise SchemaError(f"date field {self.name!r} must be {DATE_WIDTH} bytes wide")

    def renamed(self, name: str) -> "FieldSpec":
        return FieldSpec(name, self.kind, self.width, self.values)

    def check(self, value: Any) -> None:
        """Raise RowError unless `value` fits this field."""
        if value is None:
            raise RowError(f"field {self.name!r} does not accept nulls")
        if self.kind in (FieldKind.TEXT, FieldKind.ENUM):
            if not isinstance(value, str):
                raise RowError(f"field {self.name!r} expects text, got {type(value).__name__}")
            if self.kind is FieldKind.ENUM:
                if value not in self.values:
                    raise RowError(f"field {self.name!r}: {value!r} outside domain {self.values}")
                return
            if "|" in value or "\n" in value or "\r" in value:
                raise RowError(f"field {self.name!r}: value contains a reserved character")
            if len(value.encode("utf-8")) > self.width:
                raise RowError(f"field {self.name!r}: {value!r} exceeds {self.width} bytes")
        elif self.kind is FieldKind.INTEGER:
            if isinstance(value, bool) or not isinstance(value, int):
                raise RowError(f"field {self.name!r} expects an integer, got {value!r}")
            if len(str(value)) > self.width:
                raise RowError(f"field {self.name!r}: {value} exceeds {self.width} digits")
        elif self.kind is FieldKind.DECIMAL:
            if not isinstance(value, Decimal):
                raise RowError(f"field {self.name!r} expects a Decimal, got {value!r}")
            if len(str(value)) > self.width:
                raise RowError(f"field {self.name!r}: {value} exceeds {self.width} characters")
        elif self.kind is FieldKind.DATE:
            if isinstance(value, datetime) or not isinstance(value, date):
                raise RowError(f"field {self.name!r} expects a date, got {value!r}")

    def encode(self, value: Any) -> str:
        """Serialize a checked value to its text form (unpadded)."""
        if self.kind is FieldKind.DATE:
            return value.strftime("%Y%m%d")
        return str(value)

    def decode(self, text: str) -> Any:
        """Parse the text form written by `encode`."""
        try:
            if self.kind is FieldKind.INTEGER:
                return int(text)
            if self.kind is FieldKind.DECIMAL:
                return Decimal(text)
            if self.kind is FieldKind.DATE:
                return datetime.strptime(text, "%Y%m%d").date()
        except (ValueError, InvalidOperation) as exc:
            raise RowError(f"field {self.name!r}: cannot parse {text!r}") from exc
        return text

    def pad(self, value: Any) -> str:
        """Fixed-width text image of a value, space padded."""
        text = self.encode(value)
        return text + " " * (self.width - len(text.encode("utf-8")))


@dataclass(frozen=True)
class TableSchema:
    """Ordered fields plus the key used for uniqueness and snapshot ordering.

    `enforce_key` is True for OLTP master tables; warehouse tables keep
    several versions of the same business key and turn it off.
    """

    name: str
    fields: Tuple[FieldSpec, ...]
    primary_key: Tuple[str, ...] = ()
    enforce_key: bool = True

    @property
    def record_length(self) -> int:
        return sum(f.width for f in self.fields)

    @property
    def field_names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.fields)

    def index_of(self, name: str) -> int:
        for position, spec in enumerate(self.fields):
            if spec.name == name:
                return position
        raise SchemaError(f"table {self.name!r} has no field {name!r}")

    def field(self, name: str) -> FieldSpec:
        return self.fields[self.index_of(name)]

    def has_field(self, name: str) -> bool:
        return name in self.field_names

    @property
    def is_effective_dated(self) -> bool:
        return self.field_names[-2:] == (VALID_FROM, VALID_TO)

    @property
    def payload_fields(self) -> Tuple[str, ...]:
        """Fields that are neither key nor validity dates."""
        skip = set(self.primary_key) | {VALID_FROM, VALID_TO}
        return tuple(n for n in self.field_names if n not in skip)

    def describe(self) -> str:
        return ", ".join(f"{f.name}:{f.kind.value}({f.width})" for f in self.fields)


def define_table(
    name: str,
    field_specs: Sequence[FieldSpec],
    primary_key: Iterable[str] = (),
    enforce_key: bool = True,
) -> TableSchema:
    """
    Validate field specs and build a table schema.

    Args:
        name: Table name
        field_specs: Ordered field definitions
        primary_key: Field names forming the key
        enforce_key: Whether inserts reject duplicate keys

    Returns:
        TableSchema with record_length equal to the sum of field widths
    """
    if not name:
        raise SchemaError("table name must not be empty")
    specs = tuple(field_specs)
    if not specs:
        raise SchemaError(f"table {name!r} needs at least one field")

    seen: List[str] = []
    for spec in specs:
        if spec.width < 1:
            raise SchemaError(f"table {name!r}: field {spec.name!r} has zero width")
        if spec.name in seen:
            raise SchemaError(f"table {name!r}: duplicate field {spec.name!r}")
        seen.append(spec.name)

    key = tuple(primary_key)
    unknown = [k for k in key if k not in seen]
    if unknown:
        raise SchemaError(f"table {name!r}: unknown primary-key fields {unknown}")

    return TableSchema(name=name, fields=specs, primary_key=key, enforce_key=enforce_key)


def text(name: str, width: int) -> FieldSpec:
    return FieldSpec(name, FieldKind.TEXT, width)


def integer(name: str, width: int) -> FieldSpec:
    return FieldSpec(name, FieldKind.INTEGER, width)


def enum(name: str, width: int, values: Sequence[str]) -> FieldSpec:
    return FieldSpec(name, FieldKind.ENUM, width, tuple(values))


def date_field(name: str) -> FieldSpec:
    return FieldSpec(name, FieldKind.DATE, DATE_WIDTH)


def validity_fields() -> Tuple[FieldSpec, FieldSpec]:
    """The tglmula/tglakhir pair closing every warehouse table."""
    return date_field(VALID_FROM), date_field(VALID_TO)


def is_open(valid_to: date) -> bool:
    return valid_to == OPEN_DATE
