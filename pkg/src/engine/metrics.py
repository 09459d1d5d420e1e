"""
Per-query instrumentation.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict

from .schema import TableSchema


@dataclass
class QueryMetrics:
    """The six measured parameters of one query run."""

    tables_used: int = 0
    records_scanned: int = 0
    record_length_sum: int = 0
    bytes_scanned: int = 0
    wall_time: float = 0.0
    rows_produced: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QueryMetrics":
        return cls(**data)


class Meter:
    """Accumulates rows read per base table while a plan executes."""

    def __init__(self) -> None:
        self._lengths: Dict[str, int] = {}
        self._rows_read: Dict[str, int] = {}

    def record(self, schema: TableSchema, rows_read: int) -> None:
        self._lengths[schema.name] = schema.record_length
        self._rows_read[schema.name] = self._rows_read.get(schema.name, 0) + rows_read

    @property
    def tables(self) -> Dict[str, int]:
        return dict(self._lengths)

    @property
    def records_scanned(self) -> int:
        return sum(self._rows_read.values())

    @property
    def bytes_scanned(self) -> int:
        return sum(self._rows_read[n] * self._lengths[n] for n in self._rows_read)
