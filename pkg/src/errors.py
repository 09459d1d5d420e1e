"""
Exception hierarchy shared by every layer of the toolkit.
"""


class WarehouseToolkitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(WarehouseToolkitError):
    """Input rejected as invalid. The CLI maps this family to exit code 2."""


class SchemaError(ValidationError):
    """Bad field or table definition."""


class RowError(ValidationError):
    """Row does not conform to its table schema."""


class DuplicateKeyError(RowError):
    """Primary key already present in a table that enforces uniqueness."""


class PlanError(ValidationError):
    """Query plan references unknown fields or combines incompatible kinds."""


class GenerationError(ValidationError):
    """Generator configuration cannot be satisfied."""


class SnapshotError(ValidationError):
    """Snapshot file is malformed, truncated or incompatible."""


class ModelError(ValidationError):
    """Hypercube or star schema derivation failed."""


class EtlError(ValidationError):
    """Extraction, transformation or loading failed."""


class ReportError(ValidationError):
    """Unknown report or wrong backend for a report run."""


class UndefinedEfficiencyError(ValidationError):
    """Efficiency percentage has no value because the new value is not positive."""
