"""
Extraction and transformation: OLTP tables to staged warehouse rows.

Every warehouse table is staged from one wide pandas frame (its "base")
by grouping on the table's grain fields. The grain is read from the
warehouse schema, so the same bases serve any elimination threshold.
"""

import logging
from typing import Callable, Dict, List, Sequence, Tuple

import pandas as pd

from ..campus.generator import parse_nim
from ..campus.grading import ips_from_totals
from ..config import GRADE_POINTS, PADDING_FIELD, VALID_FROM, VALID_TO
from ..engine.schema import TableSchema
from ..engine.table import Database, Table
from ..errors import EtlError
from ..modeler.warehouse import WarehouseSchema
from .ips import classify_ips

logger = logging.getLogger(__name__)


def table_frame(table: Table) -> pd.DataFrame:
    """DataFrame of a table's rows without its padding column."""
    frame = pd.DataFrame(list(table.rows), columns=list(table.schema.field_names))
    return frame.drop(columns=[PADDING_FIELD], errors="ignore")


def frame_rows(frame: pd.DataFrame, columns: Sequence[str]) -> List[tuple]:
    """Rows of `frame` as tuples of native Python values."""
    if frame.empty:
        return []
    return list(zip(*(frame[c].tolist() for c in columns)))


def _merge(left: pd.DataFrame, right: pd.DataFrame, on: str, what: str) -> pd.DataFrame:
    """Inner merge that refuses to drop left rows with dangling keys."""
    merged = left.merge(right, on=on, how="left", indicator=True)
    dangling = merged[merged["_merge"] == "left_only"]
    if not dangling.empty:
        sample = sorted(set(dangling[on].tolist()))[:5]
        raise EtlError(f"referential gap in {what}: {on} {sample} not found")
    return merged.drop(columns=["_merge"])


def prodi_frame(db: Database) -> pd.DataFrame:
    """MPRODI flattened with its faculty and degree level."""
    prodi = table_frame(db["MPRODI"])
    fakultas = table_frame(db["MFAKULTAS"])
    jenjang = table_frame(db["MJENJANG"])
    flat = _merge(prodi, fakultas, "kdfak", "MPRODI → MFAKULTAS")
    return _merge(flat, jenjang, "kdjenjang", "MPRODI → MJENJANG")


def student_frame(db: Database) -> pd.DataFrame:
    students = table_frame(db["MMAHASISWA"])
    return _merge(students, prodi_frame(db), "kdprodi", "MMAHASISWA → MPRODI")


def enrollment_frame(db: Database) -> pd.DataFrame:
    krs = table_frame(db["TRKRS"])
    return _merge(krs, student_frame(db), "nim", "TRKRS → MMAHASISWA")


def ips_frame(db: Database) -> pd.DataFrame:
    """
    One row per (nim, tahun, semester) with a defined IPS and its band.

    Cohort and prodi are decoded from the NIM.
    """
    krs = table_frame(db["TRKRS"])
    graded = krs[krs["grade"].isin(list(GRADE_POINTS))].copy()
    graded["points"] = graded["grade"].map(GRADE_POINTS) * graded["sks"]
    totals = graded.groupby(["nim", "tahun", "semester"], as_index=False)[["points", "sks"]].sum()
    totals["kategori"] = [
        classify_ips(ips_from_totals(int(p), int(s))).value
        for p, s in zip(totals["points"].tolist(), totals["sks"].tolist())
    ]
    decoded = [parse_nim(nim) for nim in totals["nim"].tolist()]
    totals["angkatan"] = [angkatan for angkatan, _ in decoded]
    totals["kdprodi"] = [kdprodi for _, kdprodi in decoded]
    return _merge(totals, prodi_frame(db), "kdprodi", "NIM → MPRODI")


def schedule_frame(db: Database) -> pd.DataFrame:
    """TJADKUL with lecturer, course and the course's supervising faculty."""
    jadkul = table_frame(db["TJADKUL"])
    dosen = table_frame(db["TDOSFAK"]).rename(columns={"kdfak": "kdfak_dosen"})
    matkul = table_frame(db["MTBMTKL"])
    fakultas = table_frame(db["MFAKULTAS"])
    frame = _merge(jadkul, dosen, "kddos", "TJADKUL → TDOSFAK")
    frame = _merge(frame, matkul, "kdmtk", "TJADKUL → MTBMTKL")
    return _merge(frame, fakultas, "kdfak", "MTBMTKL → MFAKULTAS")


# Base frame per warehouse table
BASES: Dict[str, Callable[[Database], pd.DataFrame]] = {
    "WPRODI": prodi_frame,
    "WDATA1": student_frame,
    "WAKTIF": enrollment_frame,
    "WIPS": ips_frame,
    "WGRADE": enrollment_frame,
    "WJADKUL": schedule_frame,
}

# OLTP tables each warehouse table is built from
SOURCES: Dict[str, Tuple[str, ...]] = {
    "WPRODI": ("MPRODI", "MFAKULTAS", "MJENJANG"),
    "WDATA1": ("MMAHASISWA", "MPRODI", "MFAKULTAS", "MJENJANG"),
    "WAKTIF": ("TRKRS", "MMAHASISWA", "MPRODI", "MFAKULTAS", "MJENJANG"),
    "WIPS": ("TRKRS", "MPRODI", "MFAKULTAS", "MJENJANG"),
    "WGRADE": ("TRKRS", "MMAHASISWA", "MPRODI", "MFAKULTAS", "MJENJANG"),
    "WJADKUL": ("TJADKUL", "TDOSFAK", "MTBMTKL", "MFAKULTAS"),
}


def staged_columns(schema: TableSchema) -> List[str]:
    return [n for n in schema.field_names if n not in (VALID_FROM, VALID_TO)]


def stage(base: pd.DataFrame, schema: TableSchema, measures: Dict[str, Tuple[str, str | None]]) -> pd.DataFrame:
    """
    Reduce a base frame to one row per grain cell of `schema`.

    Args:
        base: Wide frame holding every grain field
        schema: Target warehouse table
        measures: alias → (function, source column)

    Returns:
        Frame with the table's non-validity columns, sorted by grain
    """
    columns = staged_columns(schema)
    grain = [c for c in columns if c not in measures]
    missing = [c for c in grain if c not in base.columns]
    if missing:
        raise EtlError(f"{schema.name}: no source for fields {missing}")

    if not measures:
        staged = base[grain].drop_duplicates()
    else:
        grouped = base.groupby(grain, sort=True)
        parts = []
        for alias, (function, column) in measures.items():
            if function == "count":
                parts.append(grouped.size().rename(alias))
            elif function == "count_distinct":
                parts.append(grouped[column].nunique().rename(alias))
            elif function == "sum":
                parts.append(grouped[column].sum().rename(alias))
            else:
                raise EtlError(f"{schema.name}: unknown measure {function!r}")
        staged = pd.concat(parts, axis=1).reset_index()
        if base.empty:
            staged = pd.DataFrame(columns=columns)
    return staged[columns].sort_values(grain, kind="stable").reset_index(drop=True)


def _measures(warehouse: WarehouseSchema, name: str) -> Dict[str, Tuple[str, str | None]]:
    for star in warehouse.facts:
        if star.fact.name == name:
            return {
                m.alias: (m.function, m.field.partition(".")[2] if m.field else None)
                for m in star.hypercube.measures
            }
    return {}


def extract_transform(
    db: Database,
    warehouse: WarehouseSchema,
    tables: Sequence[str] | None = None,
) -> Dict[str, pd.DataFrame]:
    """
    Stage rows for every warehouse table (or the named subset).

    Returns:
        Table name → staged frame (no validity columns)
    """
    wanted = list(tables) if tables is not None else list(warehouse.table_names)
    staged: Dict[str, pd.DataFrame] = {}
    bases: Dict[Callable, pd.DataFrame] = {}
    for name in wanted:
        if name not in BASES:
            raise EtlError(f"no transformation defined for warehouse table {name}")
        builder = BASES[name]
        if builder not in bases:
            bases[builder] = builder(db)
        staged[name] = stage(bases[builder], warehouse.table(name), _measures(warehouse, name))
        logger.debug("staged %s: %d rows", name, len(staged[name]))
    return staged
