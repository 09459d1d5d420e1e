"""
Operational (OLTP) schema of the campus academic database.
"""

from typing import Dict, Tuple

from ..config import DAYS, GENDERS, GRADES, JENJANG_ROWS, PADDING_FIELD, SEMESTERS
from ..engine.schema import TableSchema, date_field, define_table, enum, integer, text

JENJANG_CODES = tuple(code for code, _, _ in JENJANG_ROWS)

# Table order of the published capacity listing
OLTP_TABLES = (
    "MMAHASISWA",
    "MPRODI",
    "MFAKULTAS",
    "MJENJANG",
    "TRKRS",
    "TJADKUL",
    "TDOSFAK",
    "MTBMTKL",
)

# Record lengths every layout must hit exactly
RECORD_LENGTHS = {
    "MMAHASISWA": 586,
    "MPRODI": 48,
    "MFAKULTAS": 65,
    "MJENJANG": 24,
    "TRKRS": 68,
    "TJADKUL": 88,
    "TDOSFAK": 73,
    "MTBMTKL": 147,
}

# (child table, child field, parent table, parent field)
FOREIGN_KEYS: Tuple[Tuple[str, str, str, str], ...] = (
    ("MMAHASISWA", "kdprodi", "MPRODI", "kdprodi"),
    ("MPRODI", "kdfak", "MFAKULTAS", "kdfak"),
    ("MPRODI", "kdjenjang", "MJENJANG", "kdjenjang"),
    ("TRKRS", "nim", "MMAHASISWA", "nim"),
    ("TRKRS", "kdmtk", "MTBMTKL", "kdmtk"),
    ("TJADKUL", "kdmtk", "MTBMTKL", "kdmtk"),
    ("TJADKUL", "kddos", "TDOSFAK", "kddos"),
    ("TDOSFAK", "kdfak", "MFAKULTAS", "kdfak"),
    ("MTBMTKL", "kdfak", "MFAKULTAS", "kdfak"),
)


def _mjenjang() -> TableSchema:
    return define_table(
        "MJENJANG",
        [enum("kdjenjang", 2, JENJANG_CODES), text("sgjenjang", 2), text("nmjenjang", 20)],
        primary_key=["kdjenjang"],
    )


def _mfakultas() -> TableSchema:
    return define_table(
        "MFAKULTAS",
        [
            text("kdfak", 2),
            text("sgfak", 5),
            text("nmfak", 20),
            text("nmpembina", 35),
            text(PADDING_FIELD, 3),
        ],
        primary_key=["kdfak"],
    )


def _mprodi() -> TableSchema:
    return define_table(
        "MPRODI",
        [
            text("kdprodi", 2),
            text("sgprodi", 6),
            text("nmprodi", 30),
            text("kdfak", 2),
            enum("kdjenjang", 2, JENJANG_CODES),
            text(PADDING_FIELD, 6),
        ],
        primary_key=["kdprodi"],
    )


def _mmahasiswa() -> TableSchema:
    return define_table(
        "MMAHASISWA",
        [
            text("nim", 10),
            text("nmmhs", 40),
            enum("jenkel", 1, GENDERS),
            integer("angkatan", 4),
            text("kdprodi", 2),
            date_field("tgllahir"),
            text("alamat", 80),
            text("kota", 20),
            text(PADDING_FIELD, 421),
        ],
        primary_key=["nim"],
    )


def _trkrs() -> TableSchema:
    return define_table(
        "TRKRS",
        [
            text("nim", 10),
            text("kdmtk", 6),
            integer("tahun", 4),
            enum("semester", 6, SEMESTERS),
            text("kelas", 2),
            enum("grade", 1, GRADES),
            integer("sks", 1),
            text(PADDING_FIELD, 38),
        ],
        primary_key=["nim", "tahun", "semester", "kdmtk"],
    )


def _tjadkul() -> TableSchema:
    return define_table(
        "TJADKUL",
        [
            integer("tahun", 4),
            enum("semester", 6, SEMESTERS),
            text("kdmtk", 6),
            text("kelas", 2),
            text("kddos", 4),
            enum("hari", 6, DAYS),
            text("jam", 5),
            text("ruang", 6),
            text(PADDING_FIELD, 49),
        ],
        primary_key=["tahun", "semester", "kdmtk", "kelas", "kddos", "hari", "jam"],
    )


def _tdosfak() -> TableSchema:
    return define_table(
        "TDOSFAK",
        [
            text("kddos", 4),
            text("nmdos", 35),
            text("kdfak", 2),
            text("gelar", 10),
            text(PADDING_FIELD, 22),
        ],
        primary_key=["kddos"],
    )


def _mtbmtkl() -> TableSchema:
    return define_table(
        "MTBMTKL",
        [
            text("kdmtk", 6),
            text("sgmtk", 18),
            text("nmmtk", 60),
            integer("sks", 1),
            text("kdfak", 2),
            text(PADDING_FIELD, 60),
        ],
        primary_key=["kdmtk"],
    )


_BUILDERS = {
    "MMAHASISWA": _mmahasiswa,
    "MPRODI": _mprodi,
    "MFAKULTAS": _mfakultas,
    "MJENJANG": _mjenjang,
    "TRKRS": _trkrs,
    "TJADKUL": _tjadkul,
    "TDOSFAK": _tdosfak,
    "MTBMTKL": _mtbmtkl,
}


def build_oltp_schema() -> Dict[str, TableSchema]:
    """
    Build the eight operational table schemas.

    Returns:
        Mapping from table name to schema, in capacity-listing order
    """
    schemas = {name: _BUILDERS[name]() for name in OLTP_TABLES}
    for name, schema in schemas.items():
        # Padding widths are sized so this never fires
        assert schema.record_length == RECORD_LENGTHS[name], name
    return schemas
