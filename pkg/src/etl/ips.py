"""
IPS classification into K / C / B bands.
"""

from decimal import Decimal, InvalidOperation
from enum import Enum

from ..config import IPS_HIGH_BOUND, IPS_LOW_BOUND
from ..errors import ValidationError

_LOW = Decimal(IPS_LOW_BOUND)
_HIGH = Decimal(IPS_HIGH_BOUND)
_MAX = Decimal(4)


class IpsCategory(str, Enum):
    K = "K"  # below 2.5
    C = "C"  # 2.5 to 3.0 inclusive
    B = "B"  # above 3.0


IPS_CATEGORIES = tuple(c.value for c in IpsCategory)


def classify_ips(ips: Decimal | int | str) -> IpsCategory:
    """Band an IPS value; both bounds belong to C."""
    try:
        value = ips if isinstance(ips, Decimal) else Decimal(str(ips))
    except InvalidOperation as exc:
        raise ValidationError(f"not an IPS value: {ips!r}") from exc
    if not value.is_finite() or value < 0 or value > _MAX:
        raise ValidationError(f"IPS {ips} outside [0, 4]")
    if value < _LOW:
        return IpsCategory.K
    if value <= _HIGH:
        return IpsCategory.C
    return IpsCategory.B
