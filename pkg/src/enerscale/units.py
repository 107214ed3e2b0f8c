"""Unit tags, the scalar Quantity type, and the fixed conversion table.

Canonical internal units are T$2010/yr for production, EJ/yr for energy,
GtC/yr for emissions and ppmv for concentration; gigawatts appear only at
presentation boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, IncompatibleUnits

# Exact GW -> EJ/yr factor pinned for the whole artifact (1 GW over a
# 365-day year: 86400 * 365 * 1e9 J / 1e18).
EJ_PER_YR_PER_GW = 0.0315360

# Seconds per (Julian) year, used wherever a duration in years meets one in
# seconds (thermodynamic identities, capacity-per-day arithmetic).
SECONDS_PER_YEAR = 365.25 * 86400.0
DAYS_PER_YEAR = 365.25


class Unit(str, Enum):
    """Enumerated unit tags understood by the package."""

    TUSD = "T$2010"
    TUSD_PER_YR = "T$2010/yr"
    EJ_PER_YR = "EJ/yr"
    GW = "GW"
    GTC_PER_YR = "GtC/yr"
    GTC_PER_EJ = "GtC/EJ"
    PPMV = "ppmv"
    PPMV_PER_GTC = "ppmv/GtC"
    PER_YR = "1/yr"
    PERSONS = "persons"
    JOULE = "J"
    J_PER_USD = "J/$"
    GW_PER_TUSD = "GW/T$2010"
    TUSD_PER_PPMV = "T$2010/ppmv"
    TUSD_PER_EJ = "T$2010/EJ"
    DIMENSIONLESS = "1"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


#: Multiplicative conversion factors between convertible unit pairs.
_CONVERSIONS: dict[tuple[Unit, Unit], float] = {
    (Unit.GW, Unit.EJ_PER_YR): EJ_PER_YR_PER_GW,
    (Unit.EJ_PER_YR, Unit.GW): 1.0 / EJ_PER_YR_PER_GW,
}


def conversion_factor(source: Unit, target: Unit) -> float:
    """Return the factor taking ``source`` to ``target``.

    Raises IncompatibleUnits when no conversion path exists (context-dependent
    conversions such as GtC/yr -> ppmv are deliberately not unit conversions).
    """
    if source is target:
        return 1.0
    try:
        return _CONVERSIONS[(source, target)]
    except KeyError:
        raise IncompatibleUnits(f"no conversion path from {source.value} to {target.value}") from None


@dataclass(frozen=True)
class Quantity:
    """A finite scalar with a unit tag.

    Arithmetic between quantities is only defined for identical unit tags;
    multiplication and division by plain numbers rescale the value.
    """

    value: float
    unit: Unit

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise DomainError(f"quantity value must be finite, got {self.value!r}")

    def to(self, target: Unit) -> "Quantity":
        return Quantity(self.value * conversion_factor(self.unit, target), target)

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check_same_unit(other, "add")
        return Quantity(self.value + other.value, self.unit)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check_same_unit(other, "subtract")
        return Quantity(self.value - other.value, self.unit)

    def __mul__(self, factor: float) -> "Quantity":
        return Quantity(self.value * float(factor), self.unit)

    __rmul__ = __mul__

    def __truediv__(self, divisor: float) -> "Quantity":
        return Quantity(self.value / float(divisor), self.unit)

    def _check_same_unit(self, other: "Quantity", verb: str) -> None:
        if not isinstance(other, Quantity):
            raise TypeError(f"cannot {verb} Quantity and {type(other).__name__}")
        if other.unit is not self.unit:
            raise IncompatibleUnits(
                f"cannot {verb} {self.unit.value} and {other.unit.value}"
            )


def convert(q: Quantity, target: Unit) -> Quantity:
    """Convert ``q`` to ``target``; round-trips are exact to ~1 ulp."""
    return q.to(target)
