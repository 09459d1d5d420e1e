# Fixed-width row store and metered query execution
from .metrics import Meter, QueryMetrics
from .operators import Aggregate, Predicate, Relation, field_equals, group_aggregate, hash_join, scan
from .plan import Derive, DerivedField, Filter, GroupAggregate, HashJoin, PlanNode, Scan, run_metered
from .schema import FieldKind, FieldSpec, TableSchema, define_table
from .storage import read_database, write_database
from .table import Database, Table, TableStats, table_stats

__all__ = [
    "Aggregate",
    "Database",
    "Derive",
    "DerivedField",
    "FieldKind",
    "FieldSpec",
    "Filter",
    "GroupAggregate",
    "HashJoin",
    "Meter",
    "PlanNode",
    "Predicate",
    "QueryMetrics",
    "Relation",
    "Scan",
    "Table",
    "TableSchema",
    "TableStats",
    "define_table",
    "field_equals",
    "group_aggregate",
    "hash_join",
    "read_database",
    "run_metered",
    "scan",
    "table_stats",
    "write_database",
]
