"""
Semester grade-point average (IPS).
"""

from decimal import Decimal
from typing import Any, Iterable, Mapping

from ..config import GRADE_POINTS
from ..errors import ValidationError

# Returned when a student-semester has no graded rows
NO_IPS = None


def grade_points(grade: str) -> int | None:
    """Points for a letter grade; None for the did-not-sit grade."""
    return GRADE_POINTS.get(grade)


def ips_from_totals(points: int, sks: int) -> Decimal | None:
    if sks == 0:
        return NO_IPS
    return Decimal(points) / Decimal(sks)


def compute_ips(rows: Iterable[Mapping[str, Any]]) -> Decimal | None:
    """
    IPS of one student-semester.

    Rows graded "-" are left out of both numerator and denominator.

    Args:
        rows: TRKRS records (mappings with at least grade and sks)

    Returns:
        Σ(points × sks) / Σ(sks) over graded rows, or NO_IPS
    """
    owner = None
    points = sks = 0
    for row in rows:
        key = (row.get("nim"), row.get("tahun"), row.get("semester"))
        if owner is None:
            owner = key
        elif key != owner:
            raise ValidationError(f"compute_ips got rows of {owner} and {key}")
        value = grade_points(row["grade"])
        if value is None:
            continue
        points += value * row["sks"]
        sks += row["sks"]
    return ips_from_totals(points, sks)
