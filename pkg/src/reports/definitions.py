"""
The five management reports as plan builders for both backends.
"""

from dataclasses import dataclass
from datetime import date
from typing import Callable, Dict, List, Tuple

from ..campus.generator import parse_nim
from ..campus.grading import grade_points, ips_from_totals
from ..engine.operators import Aggregate, Predicate
from ..engine.plan import Derive, DerivedField, Filter, GroupAggregate, HashJoin, PlanNode, Scan
from ..engine.schema import enum, integer, text
from ..engine.table import Database
from ..etl.ips import IPS_CATEGORIES, classify_ips
from ..etl.merge import valid_at
from ..modeler.warehouse import WarehouseSchema

MEASURE = "jumlah"

PRODI_GRAIN = ("kdjenjang", "sgjenjang", "kdprodi", "sgprodi", "sgfak")
TERM = ("tahun", "semester")


@dataclass(frozen=True)
class ReportDefinition:
    """
    One report. `oltp_plan` builds a plan over the operational tables,
    `dw_plan` one over the warehouse; both yield `grain` plus the measure.
    """

    id: int
    title: str
    fact: str
    grain: Tuple[str, ...]
    measure: str | None
    oltp_plan: Callable[[Database], PlanNode]
    dw_plan: Callable[[Database, WarehouseSchema, date | None], PlanNode]

    @property
    def columns(self) -> Tuple[str, ...]:
        return self.grain + ((self.measure,) if self.measure else ())


def _prodi_chain(left: PlanNode, db: Database, on: str = "kdprodi") -> PlanNode:
    """left ⋈ MPRODI ⋈ MFAKULTAS ⋈ MJENJANG."""
    plan = HashJoin(left, Scan(db["MPRODI"]), [(on, "kdprodi")])
    plan = HashJoin(plan, Scan(db["MFAKULTAS"]), [("kdfak", "kdfak")])
    return HashJoin(plan, Scan(db["MJENJANG"]), [("kdjenjang", "kdjenjang")])


def _students_per_cohort(db: Database) -> PlanNode:
    plan = _prodi_chain(Scan(db["MMAHASISWA"]), db)
    return GroupAggregate(plan, REPORTS[1].grain, [Aggregate("count", alias=MEASURE)])


def _enrollments(db: Database) -> PlanNode:
    plan = HashJoin(Scan(db["TRKRS"]), Scan(db["MMAHASISWA"]), [("nim", "nim")])
    return _prodi_chain(plan, db)


def _active_students(db: Database) -> PlanNode:
    return GroupAggregate(_enrollments(db), REPORTS[2].grain, [Aggregate("count_distinct", "nim", MEASURE)])


def _grade_counts(db: Database) -> PlanNode:
    return GroupAggregate(_enrollments(db), REPORTS[4].grain, [Aggregate("count", alias=MEASURE)])


def _points(grade: str, sks: int) -> int:
    value = grade_points(grade)
    return 0 if value is None else value * sks


def _graded_sks(grade: str, sks: int) -> int:
    return 0 if grade_points(grade) is None else sks


def _ips_bands(db: Database) -> PlanNode:
    """IPS per student-semester from TRKRS alone; prodi and cohort come from the NIM."""
    plan = Derive(
        Scan(db["TRKRS"]),
        [
            DerivedField(integer("points", 6), ("grade", "sks"), _points),
            DerivedField(integer("sks_graded", 4), ("grade", "sks"), _graded_sks),
        ],
    )
    plan = GroupAggregate(
        plan,
        ("nim", "tahun", "semester"),
        [Aggregate("sum", "points", "points", 6), Aggregate("sum", "sks_graded", "sks_graded", 4)],
    )
    plan = Filter(plan, Predicate(("sks_graded",), lambda sks: sks > 0))
    plan = Derive(
        plan,
        [
            DerivedField(
                enum("kategori", 1, IPS_CATEGORIES),
                ("points", "sks_graded"),
                lambda points, sks: classify_ips(ips_from_totals(points, sks)).value,
            ),
            DerivedField(integer("angkatan", 4), ("nim",), lambda nim: parse_nim(nim)[0]),
            DerivedField(text("kdprodi", 2), ("nim",), lambda nim: parse_nim(nim)[1]),
        ],
    )
    plan = _prodi_chain(plan, db)
    return GroupAggregate(plan, REPORTS[3].grain, [Aggregate("count", alias=MEASURE)])


def _schedule(db: Database) -> PlanNode:
    plan = HashJoin(Scan(db["TJADKUL"]), Scan(db["TDOSFAK"]), [("kddos", "kddos")])
    plan = HashJoin(plan, Scan(db["MTBMTKL"]), [("kdmtk", "kdmtk")])
    # TDOSFAK.kdfak keeps the plain name, the course's faculty is prefixed
    plan = HashJoin(plan, Scan(db["MFAKULTAS"]), [("MTBMTKL.kdfak", "kdfak")])
    return GroupAggregate(plan, REPORTS[5].grain)


def _fact_plan(report_id: int) -> Callable[[Database, WarehouseSchema, date | None], PlanNode]:
    """Fact scan joined to each retained dimension, re-aggregated at the report grain."""

    def build(db: Database, schema: WarehouseSchema, as_of: date | None) -> PlanNode:
        report = REPORTS[report_id]
        star = schema.star(report_id)
        predicate = valid_at(as_of)
        plan: PlanNode = Scan(db[star.fact.name], predicate)
        for column, table in star.references.values():
            dim = db[table]
            plan = HashJoin(plan, Scan(dim, predicate), [(column, dim.schema.fields[0].name)])
        if report.measure is None:
            return GroupAggregate(plan, report.grain)
        return GroupAggregate(plan, report.grain, [Aggregate("sum", report.measure, report.measure)])

    return build


REPORTS: Dict[int, ReportDefinition] = {}


def _register(*definitions: ReportDefinition) -> None:
    for definition in definitions:
        REPORTS[definition.id] = definition


_register(
    ReportDefinition(
        1,
        "Students per degree level, study program, gender and cohort",
        "WDATA1",
        PRODI_GRAIN + ("jenkel", "angkatan"),
        MEASURE,
        _students_per_cohort,
        _fact_plan(1),
    ),
    ReportDefinition(
        2,
        "Active students per term, degree level, study program, gender and cohort",
        "WAKTIF",
        TERM + PRODI_GRAIN + ("jenkel", "angkatan"),
        MEASURE,
        _active_students,
        _fact_plan(2),
    ),
    ReportDefinition(
        3,
        "Students per IPS band per term, degree level, study program and cohort",
        "WIPS",
        TERM + PRODI_GRAIN + ("angkatan", "kategori"),
        MEASURE,
        _ips_bands,
        _fact_plan(3),
    ),
    ReportDefinition(
        4,
        "Grades per term, degree level, study program, gender and cohort",
        "WGRADE",
        TERM + PRODI_GRAIN + ("jenkel", "angkatan", "grade"),
        MEASURE,
        _grade_counts,
        _fact_plan(4),
    ),
    ReportDefinition(
        5,
        "Teaching schedule per term",
        "WJADKUL",
        TERM + ("kdmtk", "sgmtk", "sks", "nmpembina", "kelas", "kddos", "nmdos"),
        None,
        _schedule,
        _fact_plan(5),
    ),
)


def report_ids() -> List[int]:
    return sorted(REPORTS)
