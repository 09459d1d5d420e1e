"""
Reference tallies of the five reports computed straight from table
records with Counter and dict lookups, for cross-checking both backends.
"""

from collections import Counter, defaultdict
from fractions import Fraction

POINTS = {"A": 4, "B": 3, "C": 2, "D": 1, "E": 0}


def _by_key(db, table, key):
    return {record[key]: record for record in db[table].records()}


def _prodi_cells(db):
    """kdprodi → (kdjenjang, sgjenjang, kdprodi, sgprodi, sgfak)."""
    fakultas = _by_key(db, "MFAKULTAS", "kdfak")
    jenjang = _by_key(db, "MJENJANG", "kdjenjang")
    cells = {}
    for prodi in db["MPRODI"].records():
        cells[prodi["kdprodi"]] = (
            prodi["kdjenjang"],
            jenjang[prodi["kdjenjang"]]["sgjenjang"],
            prodi["kdprodi"],
            prodi["sgprodi"],
            fakultas[prodi["kdfak"]]["sgfak"],
        )
    return cells


def _band(points, sks):
    ips = Fraction(points, sks)
    if ips < Fraction(5, 2):
        return "K"
    if ips <= 3:
        return "C"
    return "B"


def students_per_cohort(db):
    prodi = _prodi_cells(db)
    tally = Counter(
        prodi[s["kdprodi"]] + (s["jenkel"], s["angkatan"])
        for s in db["MMAHASISWA"].records()
    )
    return sorted(key + (n,) for key, n in tally.items())


def active_students(db):
    prodi = _prodi_cells(db)
    students = _by_key(db, "MMAHASISWA", "nim")
    members = defaultdict(set)
    for krs in db["TRKRS"].records():
        s = students[krs["nim"]]
        key = (krs["tahun"], krs["semester"]) + prodi[s["kdprodi"]] + (s["jenkel"], s["angkatan"])
        members[key].add(krs["nim"])
    return sorted(key + (len(nims),) for key, nims in members.items())


def ips_bands(db):
    prodi = _prodi_cells(db)
    totals = defaultdict(lambda: [0, 0])
    for krs in db["TRKRS"].records():
        if krs["grade"] not in POINTS:
            continue
        entry = totals[(krs["nim"], krs["tahun"], krs["semester"])]
        entry[0] += POINTS[krs["grade"]] * krs["sks"]
        entry[1] += krs["sks"]
    tally = Counter()
    for (nim, tahun, semester), (points, sks) in totals.items():
        if sks == 0:
            continue
        key = (tahun, semester) + prodi[nim[4:6]] + (int(nim[:4]), _band(points, sks))
        tally[key] += 1
    return sorted(key + (n,) for key, n in tally.items())


def grade_counts(db):
    prodi = _prodi_cells(db)
    students = _by_key(db, "MMAHASISWA", "nim")
    tally = Counter()
    for krs in db["TRKRS"].records():
        s = students[krs["nim"]]
        tally[
            (krs["tahun"], krs["semester"]) + prodi[s["kdprodi"]]
            + (s["jenkel"], s["angkatan"], krs["grade"])
        ] += 1
    return sorted(key + (n,) for key, n in tally.items())


def schedule(db):
    fakultas = _by_key(db, "MFAKULTAS", "kdfak")
    dosen = _by_key(db, "TDOSFAK", "kddos")
    matkul = _by_key(db, "MTBMTKL", "kdmtk")
    rows = set()
    for j in db["TJADKUL"].records():
        m = matkul[j["kdmtk"]]
        rows.add((
            j["tahun"], j["semester"], j["kdmtk"], m["sgmtk"], m["sks"],
            fakultas[m["kdfak"]]["nmpembina"], j["kelas"], j["kddos"], dosen[j["kddos"]]["nmdos"],
        ))
    return sorted(rows)


EXPECTED = {
    1: students_per_cohort,
    2: active_students,
    3: ips_bands,
    4: grade_counts,
    5: schedule,
}


def expected_rows(report_id, db):
    """Sorted result rows (grain then measure) of one report over an OLTP database."""
    return EXPECTED[report_id](db)
