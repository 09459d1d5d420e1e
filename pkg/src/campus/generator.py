"""
Deterministic synthetic data for the campus database.

Two modes share the master-data builders:

- random: every student, enrollment and schedule row drawn uniformly
  under the seed (desk and custom scales);
- paper scale: counts and warehouse grain cells are laid out by quota so
  the published table sizes come out exactly for any seed.
"""

import hashlib
import json
import logging
import random
from collections import defaultdict
from dataclasses import asdict, dataclass
from datetime import date
from typing import Any, Dict, List, Sequence, Tuple

from ..config import (
    ACTIVE_JENJANG,
    DAYS,
    GENDERS,
    GRADES,
    JENJANG_ROWS,
    PAPER_FACT_QUOTAS,
    SCALE_PRESETS,
    SEMESTERS,
)
from ..engine.table import Database, Table
from ..errors import GenerationError
from .schema import FOREIGN_KEYS, OLTP_TABLES, build_oltp_schema

logger = logging.getLogger(__name__)

FIRST_NAMES = (
    "Adi", "Agus", "Ani", "Bambang", "Budi", "Citra", "Dewi", "Dian", "Eko", "Fajar",
    "Fitri", "Gita", "Hadi", "Indah", "Joko", "Kartika", "Lestari", "Maya", "Nur", "Putri",
    "Rina", "Rudi", "Sari", "Sri", "Taufik", "Tuti", "Wahyu", "Wulan", "Yanti", "Yusuf",
)
LAST_NAMES = (
    "Pratama", "Saputra", "Wijaya", "Santoso", "Hidayat", "Kusuma", "Lubis", "Nasution",
    "Siregar", "Setiawan", "Gunawan", "Halim", "Purnomo", "Rahayu", "Susanto", "Utami",
)
CITIES = ("Medan", "Binjai", "Pematangsiantar", "Tebing Tinggi", "Deli Serdang", "Langkat")
STREETS = ("Gatot Subroto", "Sisingamangaraja", "Sudirman", "Gajah Mada", "Diponegoro", "Imam Bonjol")
TITLES = ("S.Kom", "M.Kom", "M.T.", "M.Si", "M.M.", "Dr.", "Prof. Dr.")
TIME_SLOTS = ("07:30", "09:30", "13:00", "15:00")
CLASS_GROUPS = ("01", "02", "03", "04", "05")

FACULTIES = (
    ("FTI", "Teknologi Informasi"),
    ("FE", "Ekonomi"),
    ("FH", "Hukum"),
    ("FT", "Teknik"),
    ("FKIP", "Keguruan"),
    ("FISIP", "Ilmu Sosial Politik"),
    ("FP", "Pertanian"),
)
PROGRAMS = (
    ("TI", "Teknik Informatika"),
    ("SI", "Sistem Informasi"),
    ("MI", "Manajemen Informatika"),
    ("KA", "Komputerisasi Akuntansi"),
    ("MNJ", "Manajemen"),
    ("AKT", "Akuntansi"),
    ("IH", "Ilmu Hukum"),
    ("TS", "Teknik Sipil"),
    ("TE", "Teknik Elektro"),
    ("TM", "Teknik Mesin"),
    ("PBI", "Pendidikan Bahasa Inggris"),
    ("PMT", "Pendidikan Matematika"),
    ("IKOM", "Ilmu Komunikasi"),
    ("AN", "Administrasi Negara"),
    ("AGR", "Agroteknologi"),
    ("AGB", "Agribisnis"),
)
SUBJECTS = (
    "Algoritma", "Basis Data", "Jaringan", "Statistika", "Kalkulus", "Akuntansi Dasar",
    "Pengantar Hukum", "Mekanika", "Rangkaian Listrik", "Bahasa Inggris", "Pancasila",
    "Kewarganegaraan", "Manajemen Proyek", "Sistem Operasi", "Riset Operasi", "Etika Profesi",
)


@dataclass(frozen=True)
class GenConfig:
    """Generator parameters; a pure function of these determines the data."""

    seed: int = 0
    n_students: int = 0
    n_prodi: int = 0
    n_fakultas: int = 0
    n_krs: int = 0
    n_jadkul: int = 0
    n_dosen: int = 0
    n_matkul: int = 0
    years: Tuple[int, int] = (2006, 2010)
    paper_scale: bool = False
    taken_on: date | None = None

    @classmethod
    def preset(cls, name: str, seed: int = 0, **overrides: Any) -> "GenConfig":
        if name not in SCALE_PRESETS:
            raise GenerationError(f"unknown scale {name!r}; choose from {sorted(SCALE_PRESETS)}")
        settings = {k: v for k, v in SCALE_PRESETS[name].items() if k != "description"}
        settings.update(overrides)
        settings["years"] = tuple(settings["years"])
        return cls(seed=seed, **settings)

    @property
    def snapshot_date(self) -> date:
        return self.taken_on or date(self.years[1] + 1, 2, 1)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["years"] = list(self.years)
        data["taken_on"] = self.snapshot_date.isoformat()
        return data

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def validate_config(config: GenConfig) -> None:
    """Raise GenerationError when the counts cannot form a consistent database."""
    counts = {
        "n_students": config.n_students,
        "n_prodi": config.n_prodi,
        "n_fakultas": config.n_fakultas,
        "n_krs": config.n_krs,
        "n_jadkul": config.n_jadkul,
        "n_dosen": config.n_dosen,
        "n_matkul": config.n_matkul,
    }
    negative = [k for k, v in counts.items() if not isinstance(v, int) or v < 0]
    if negative:
        raise GenerationError(f"counts must be non-negative integers: {negative}")

    start, end = config.years
    if start > end:
        raise GenerationError(f"year range {config.years} is empty")

    needs = (
        ("n_students", "n_prodi"),
        ("n_prodi", "n_fakultas"),
        ("n_dosen", "n_fakultas"),
        ("n_matkul", "n_fakultas"),
        ("n_krs", "n_students"),
        ("n_krs", "n_matkul"),
        ("n_jadkul", "n_matkul"),
        ("n_jadkul", "n_dosen"),
    )
    for child, parent in needs:
        if counts[child] > 0 and counts[parent] == 0:
            raise GenerationError(f"{child}={counts[child]} needs {parent} > 0")

    limits = {"n_prodi": 99, "n_fakultas": 99, "n_dosen": 999, "n_matkul": 9999}
    for key, limit in limits.items():
        if counts[key] > limit:
            raise GenerationError(f"{key} may not exceed {limit}")

    if config.paper_scale:
        reference = SCALE_PRESETS["paper"]
        differing = [k for k in counts if counts[k] != reference[k]]
        if differing or tuple(config.years) != tuple(reference["years"]):
            raise GenerationError(f"paper scale fixes its counts; differing: {differing or ['years']}")


def _person(rng: random.Random) -> str:
    return f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"


def make_nim(angkatan: int, kdprodi: str, seq: int) -> str:
    """NIM = 4-digit cohort year + 2-digit prodi code + 4-digit sequence."""
    if not 0 < seq <= 9999:
        raise GenerationError(f"NIM sequence {seq} out of range for {angkatan}/{kdprodi}")
    return f"{angkatan:04d}{kdprodi}{seq:04d}"


def parse_nim(nim: str) -> Tuple[int, str]:
    """(angkatan, kdprodi) encoded in a NIM."""
    return int(nim[:4]), nim[4:6]


class _Builder:
    """Accumulates rows per table while a database is generated."""

    def __init__(self, config: GenConfig):
        self.config = config
        self.rng = random.Random(config.seed)
        self.schemas = build_oltp_schema()
        self.rows: Dict[str, List[tuple]] = {name: [] for name in OLTP_TABLES}
        self.nim_seq: Dict[Tuple[int, str], int] = defaultdict(int)
        self.students: List[tuple] = []  # (nim, kdprodi, jenkel, angkatan)
        self.course_sks: Dict[str, int] = {}

    # master data

    def masters(self) -> None:
        cfg, rng = self.config, self.rng
        for code, short, name in JENJANG_ROWS:
            self.rows["MJENJANG"].append((code, short, name))

        for i in range(1, cfg.n_fakultas + 1):
            short, name = FACULTIES[i - 1] if i <= len(FACULTIES) else (f"F{i:02d}", f"Fakultas {i}")
            self.rows["MFAKULTAS"].append((f"{i:02d}", short, name, "Dr. " + _person(rng), ""))

        for i in range(1, cfg.n_prodi + 1):
            short, name = PROGRAMS[i - 1] if i <= len(PROGRAMS) else (f"PR{i:02d}", f"Program {i}")
            jenjang = ACTIVE_JENJANG[(i - 1) % len(ACTIVE_JENJANG)]
            kdfak = f"{(i - 1) % cfg.n_fakultas + 1:02d}"
            self.rows["MPRODI"].append((f"{i:02d}", short, name, kdfak, jenjang, ""))

        for i in range(1, cfg.n_dosen + 1):
            kdfak = f"{rng.randint(1, cfg.n_fakultas):02d}"
            self.rows["TDOSFAK"].append((f"D{i:03d}", _person(rng), kdfak, rng.choice(TITLES), ""))

        for i in range(1, cfg.n_matkul + 1):
            subject = SUBJECTS[(i - 1) % len(SUBJECTS)]
            level = (i - 1) // len(SUBJECTS) + 1
            kdmtk = f"MK{i:04d}"
            sks = rng.choice((2, 3, 4))
            kdfak = f"{rng.randint(1, cfg.n_fakultas):02d}"
            self.course_sks[kdmtk] = sks
            self.rows["MTBMTKL"].append(
                (kdmtk, f"{subject[:12]} {level}", f"{subject} {level}", sks, kdfak, "")
            )

    def add_student(self, kdprodi: str, jenkel: str, angkatan: int) -> str:
        rng = self.rng
        self.nim_seq[(angkatan, kdprodi)] += 1
        nim = make_nim(angkatan, kdprodi, self.nim_seq[(angkatan, kdprodi)])
        born = date(angkatan - 18, rng.randint(1, 12), rng.randint(1, 28))
        address = f"Jl. {rng.choice(STREETS)} No. {rng.randint(1, 300)}"
        self.rows["MMAHASISWA"].append(
            (nim, _person(rng), jenkel, angkatan, kdprodi, born, address, rng.choice(CITIES), "")
        )
        self.students.append((nim, kdprodi, jenkel, angkatan))
        return nim

    def add_krs(self, nim: str, kdmtk: str, tahun: int, semester: str, grade: str) -> None:
        kelas = f"{self.rng.randint(1, 3):02d}"
        self.rows["TRKRS"].append(
            (nim, kdmtk, tahun, semester, kelas, grade, self.course_sks[kdmtk], "")
        )

    def add_jadkul(self, tahun: int, semester: str, kdmtk: str, kelas: str, kddos: str, slot: Tuple[str, str]) -> None:
        ruang = f"R{self.rng.randint(100, 499)}"
        self.rows["TJADKUL"].append((tahun, semester, kdmtk, kelas, kddos, slot[0], slot[1], ruang, ""))

    def database(self) -> Database:
        db = Database("oltp", taken_on=self.config.snapshot_date, config_hash=self.config.config_hash)
        for name in OLTP_TABLES:
            db.add(Table(self.schemas[name], self.rows[name]))
        return db

    # random mode

    def random_activity(self) -> None:
        cfg, rng = self.config, self.rng
        start, end = cfg.years
        prodi = [row[0] for row in self.rows["MPRODI"]]
        for _ in range(cfg.n_students):
            self.add_student(rng.choice(prodi), rng.choice(GENDERS), rng.randint(start, end))

        courses = sorted(self.course_sks)
        taken = set()
        budget = 50 * cfg.n_krs + 1000
        while len(self.rows["TRKRS"]) < cfg.n_krs:
            budget -= 1
            if budget < 0:
                raise GenerationError(f"cannot place {cfg.n_krs} distinct enrollments")
            nim, _, _, angkatan = rng.choice(self.students)
            tahun = rng.randint(angkatan, end)
            semester = rng.choice(SEMESTERS)
            kdmtk = rng.choice(courses)
            key = (nim, tahun, semester, kdmtk)
            if key in taken:
                continue
            taken.add(key)
            self.add_krs(nim, kdmtk, tahun, semester, rng.choice(GRADES))

        lecturers = [row[0] for row in self.rows["TDOSFAK"]]
        slots = [(day, hour) for day in DAYS for hour in TIME_SLOTS]
        placed = set()
        budget = 50 * cfg.n_jadkul + 1000
        while len(self.rows["TJADKUL"]) < cfg.n_jadkul:
            budget -= 1
            if budget < 0:
                raise GenerationError(f"cannot place {cfg.n_jadkul} distinct schedule slots")
            tahun = rng.randint(start, end)
            semester = rng.choice(SEMESTERS)
            kdmtk = rng.choice(courses)
            kelas = rng.choice(CLASS_GROUPS)
            kddos = rng.choice(lecturers)
            slot = rng.choice(slots)
            key = (tahun, semester, kdmtk, kelas, kddos) + slot
            if key in placed:
                continue
            placed.add(key)
            self.add_jadkul(tahun, semester, kdmtk, kelas, kddos, slot)

    # paper-scale mode

    def paper_activity(self) -> None:
        cfg, rng = self.config, self.rng
        start, end = cfg.years
        prodi = [row[0] for row in self.rows["MPRODI"]]

        # Students: one cohort cell per (angkatan, prodi, gender), a few
        # first-year female cells left empty to meet the cell quota
        cells = [(a, p, g) for a in range(start, end + 1) for p in prodi for g in GENDERS]
        n_drop = len(cells) - PAPER_FACT_QUOTAS["WDATA1"]
        dropped = {(start, p, "W") for p in rng.sample(prodi, n_drop)}
        cells = [c for c in cells if c not in dropped]
        size, remainder = divmod(cfg.n_students, len(cells))
        bigger = set(rng.sample(range(len(cells)), remainder))
        members: Dict[Tuple[int, str, str], List[str]] = {}
        for index, (angkatan, kdprodi, jenkel) in enumerate(cells):
            count = size + (1 if index in bigger else 0)
            members[(angkatan, kdprodi, jenkel)] = [
                self.add_student(kdprodi, jenkel, angkatan) for _ in range(count)
            ]

        self._paper_enrollments(members, prodi)
        self._paper_schedule()

    def _paper_enrollments(self, members: Dict[Tuple[int, str, str], List[str]], prodi: Sequence[str]) -> None:
        cfg, rng = self.config, self.rng
        start, end = cfg.years

        # Active groups (tahun, semester, prodi, angkatan); both gender cells
        # of a group enroll all of their students
        n_groups = PAPER_FACT_QUOTAS["WAKTIF"] // len(GENDERS)
        candidates = [
            (tahun, semester, p, angkatan)
            for tahun in range(start, end + 1)
            for semester in SEMESTERS
            for p in prodi
            for angkatan in range(start + 1, tahun + 1)
        ]
        groups = sorted(rng.sample(candidates, n_groups))

        # Uniform grade per student-semester makes the IPS band a function of
        # the grade: A→B, B→C, C/D/E→K, "-"→no IPS
        n_three = PAPER_FACT_QUOTAS["WIPS"] - 2 * n_groups
        if not 0 <= n_three <= n_groups:
            raise GenerationError("IPS cell quota cannot be laid out over the active groups")
        shuffled = list(groups)
        rng.shuffle(shuffled)
        two_band = set(shuffled[: n_groups - n_three])
        three_band = shuffled[n_groups - n_three:]

        n_short = 5 * len(GENDERS) * n_groups - PAPER_FACT_QUOTAS["WGRADE"]
        short_pool = [(g, gender) for g in three_band for gender in GENDERS]
        if not 0 <= n_short <= len(short_pool):
            raise GenerationError("grade cell quota cannot be laid out over the active groups")
        short_cells = set(rng.sample(short_pool, n_short))

        semesters: List[Tuple[str, int, str, str]] = []
        for group in groups:
            tahun, semester, kdprodi, angkatan = group
            for jenkel in GENDERS:
                if group in two_band:
                    grade_set = ("B", "C", "D", "E", "-")
                elif (group, jenkel) in short_cells:
                    grade_set = ("A", "B", "C", "E")
                else:
                    grade_set = ("A", "B", "C", "D", "E")
                students = list(members[(angkatan, kdprodi, jenkel)])
                rng.shuffle(students)
                for i, nim in enumerate(students):
                    semesters.append((nim, tahun, semester, grade_set[i % len(grade_set)]))

        courses = sorted(self.course_sks)
        per, remainder = divmod(cfg.n_krs, len(semesters))
        if per == 0 or per + 1 > len(courses):
            raise GenerationError(f"{cfg.n_krs} enrollments do not fit {len(semesters)} student-semesters")
        heavier = set(rng.sample(range(len(semesters)), remainder))
        for index, (nim, tahun, semester, grade) in enumerate(semesters):
            count = per + (1 if index in heavier else 0)
            for kdmtk in rng.sample(courses, count):
                self.add_krs(nim, kdmtk, tahun, semester, grade)

    def _paper_schedule(self) -> None:
        cfg, rng = self.config, self.rng
        start, end = cfg.years
        courses = sorted(self.course_sks)
        lecturers = [row[0] for row in self.rows["TDOSFAK"]]
        slots = [(day, hour) for day in DAYS for hour in TIME_SLOTS]

        # Teaching assignments are unique per (tahun, semester, course, class group)
        n_assign = PAPER_FACT_QUOTAS["WJADKUL"]
        assignments = set()
        while len(assignments) < n_assign:
            assignments.add(
                (rng.randint(start, end), rng.choice(SEMESTERS), rng.choice(courses), rng.choice(CLASS_GROUPS))
            )
        ordered = sorted(assignments)
        per, remainder = divmod(cfg.n_jadkul, n_assign)
        if per + 1 > len(slots):
            raise GenerationError(f"{cfg.n_jadkul} schedule rows do not fit {n_assign} assignments")
        heavier = set(rng.sample(range(n_assign), remainder))
        for index, (tahun, semester, kdmtk, kelas) in enumerate(ordered):
            kddos = rng.choice(lecturers)
            for slot in rng.sample(slots, per + (1 if index in heavier else 0)):
                self.add_jadkul(tahun, semester, kdmtk, kelas, kddos, slot)


def check_referential(db: Database) -> None:
    """Raise GenerationError listing foreign keys that do not resolve."""
    problems = []
    for child, child_field, parent, parent_field in FOREIGN_KEYS:
        if child not in db or parent not in db:
            continue
        parent_table = db[parent]
        position = parent_table.schema.index_of(parent_field)
        known = {row[position] for row in parent_table.rows}
        child_table = db[child]
        child_position = child_table.schema.index_of(child_field)
        missing = {row[child_position] for row in child_table.rows} - known
        if missing:
            problems.append(f"{child}.{child_field} → {parent}.{parent_field}: {sorted(missing)[:5]}")
    if problems:
        raise GenerationError("unresolved foreign keys: " + "; ".join(problems))


def generate(config: GenConfig) -> Database:
    """
    Generate a populated OLTP database.

    Args:
        config: Generator parameters

    Returns:
        Database of kind "oltp" dated config.snapshot_date
    """
    validate_config(config)
    builder = _Builder(config)
    builder.masters()
    if config.paper_scale:
        builder.paper_activity()
    else:
        builder.random_activity()
    db = builder.database()
    check_referential(db)
    logger.info(
        "generated %d records over %d tables (seed %d, hash %s)",
        db.total_records, len(db), config.seed, config.config_hash,
    )
    return db


def evolve_database(db: Database, seed: int, taken_on: date, churn: float = 0.02) -> Database:
    """
    Produce the next snapshot of a source database.

    Changes some grades, withdraws some enrollments, corrects some
    genders, renames one lecturer and admits new students with
    enrollments. The number of each change is churn × student count
    (at least one).
    """
    if db.taken_on is not None and taken_on <= db.taken_on:
        raise GenerationError(f"evolved snapshot date {taken_on} must follow {db.taken_on}")
    if not 0 < churn <= 1:
        raise GenerationError(f"churn must be in (0, 1], got {churn}")

    rng = random.Random(seed)
    rows = {table.name: list(table.rows) for table in db}
    schemas = {table.name: table.schema for table in db}
    students, krs = rows["MMAHASISWA"], rows["TRKRS"]
    n = max(1, round(churn * len(students)))

    grade_at = schemas["TRKRS"].index_of("grade")
    picked = rng.sample(range(len(krs)), min(len(krs), 2 * n))
    for position in picked[:n]:
        row = krs[position]
        new_grade = rng.choice([g for g in GRADES if g != row[grade_at]])
        krs[position] = row[:grade_at] + (new_grade,) + row[grade_at + 1:]
    withdrawn = set(picked[n:])
    krs = [row for position, row in enumerate(krs) if position not in withdrawn]

    gender_at = schemas["MMAHASISWA"].index_of("jenkel")
    for position in rng.sample(range(len(students)), min(len(students), n)):
        row = students[position]
        flipped = GENDERS[1 - GENDERS.index(row[gender_at])]
        students[position] = row[:gender_at] + (flipped,) + row[gender_at + 1:]

    if rows["TDOSFAK"]:
        name_at = schemas["TDOSFAK"].index_of("nmdos")
        position = rng.randrange(len(rows["TDOSFAK"]))
        row = rows["TDOSFAK"][position]
        rows["TDOSFAK"][position] = row[:name_at] + (_person(rng),) + row[name_at + 1:]

    admitted = _admit(rng, rows, n, taken_on)
    rows["TRKRS"] = krs + admitted["TRKRS"]
    rows["MMAHASISWA"] = students + admitted["MMAHASISWA"]

    digest = hashlib.sha256(f"{db.config_hash}|{seed}|{churn}|{taken_on}".encode("utf-8"))
    evolved = Database("oltp", taken_on=taken_on, config_hash=digest.hexdigest()[:16])
    for name in db.names:
        evolved.add(Table(schemas[name], rows[name]))
    check_referential(evolved)
    logger.info("evolved snapshot %s: %d changes of each kind", taken_on, n)
    return evolved


def _admit(rng: random.Random, rows: Dict[str, List[tuple]], n: int, taken_on: date) -> Dict[str, List[tuple]]:
    """New students, each enrolled in up to three courses of one semester."""
    admitted: Dict[str, List[tuple]] = {"MMAHASISWA": [], "TRKRS": []}
    prodi = [row[0] for row in rows["MPRODI"]]
    courses = [(row[0], row[3]) for row in rows["MTBMTKL"]]
    if not prodi:
        return admitted

    angkatan = taken_on.year - 1
    last_seq: Dict[str, int] = defaultdict(int)
    for row in rows["MMAHASISWA"]:
        prefix = row[0][:6]
        last_seq[prefix] = max(last_seq[prefix], int(row[0][6:]))
    for _ in range(n):
        kdprodi = rng.choice(prodi)
        prefix = f"{angkatan:04d}{kdprodi}"
        last_seq[prefix] += 1
        nim = make_nim(angkatan, kdprodi, last_seq[prefix])
        born = date(angkatan - 18, rng.randint(1, 12), rng.randint(1, 28))
        address = f"Jl. {rng.choice(STREETS)} No. {rng.randint(1, 300)}"
        admitted["MMAHASISWA"].append(
            (nim, _person(rng), rng.choice(GENDERS), angkatan, kdprodi, born, address, rng.choice(CITIES), "")
        )
        for kdmtk, sks in rng.sample(courses, min(3, len(courses))):
            kelas = f"{rng.randint(1, 3):02d}"
            admitted["TRKRS"].append(
                (nim, kdmtk, angkatan, SEMESTERS[0], kelas, rng.choice(GRADES), sks, "")
            )
    return admitted
