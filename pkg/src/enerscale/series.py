"""Year-indexed series types: the universal carrier for observational data.

An AnnualSeries value for year ``t`` is the annual average or total for that
calendar year, matching the reporting conventions of the underlying sources.
All series types are immutable; every operation returns a new series.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import math

import numpy as np

from .errors import DomainError, EmptySlice, InvalidPeriod, KindError
from .units import Unit


class SeriesKind(str, Enum):
    """What a series measures; constrains the admissible unit tags."""

    GDP_MER = "gdp_mer"
    GDP_PPP = "gdp_ppp"
    ENERGY = "energy"
    EMISSIONS = "emissions"
    CONCENTRATION = "concentration"
    POPULATION = "population"
    # Derived kinds produced by the analysis layers.
    WEALTH = "wealth"
    SCALING = "scaling"
    PRODUCTIVITY = "productivity"
    CARBONIZATION = "carbonization"
    RATE = "rate"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


#: Unit tags admissible for each series kind.
KIND_UNITS: dict[SeriesKind, frozenset[Unit]] = {
    SeriesKind.GDP_MER: frozenset({Unit.TUSD_PER_YR}),
    SeriesKind.GDP_PPP: frozenset({Unit.TUSD_PER_YR}),
    SeriesKind.ENERGY: frozenset({Unit.EJ_PER_YR, Unit.GW}),
    SeriesKind.EMISSIONS: frozenset({Unit.GTC_PER_YR}),
    SeriesKind.CONCENTRATION: frozenset({Unit.PPMV}),
    SeriesKind.POPULATION: frozenset({Unit.PERSONS}),
    SeriesKind.WEALTH: frozenset({Unit.TUSD}),
    SeriesKind.SCALING: frozenset({Unit.GW_PER_TUSD}),
    SeriesKind.PRODUCTIVITY: frozenset({Unit.TUSD_PER_EJ}),
    SeriesKind.CARBONIZATION: frozenset({Unit.GTC_PER_EJ}),
    SeriesKind.RATE: frozenset({Unit.PER_YR}),
}


@dataclass(frozen=True)
class Period:
    """Closed interval of calendar years; both endpoints are included."""

    start_year: int
    end_year: int

    def __post_init__(self) -> None:
        if self.start_year >= self.end_year:
            raise InvalidPeriod(
                f"period must satisfy start < end, got {self.start_year}..{self.end_year}"
            )

    @property
    def span(self) -> int:
        """Number of year steps between the endpoints (end - start)."""
        return self.end_year - self.start_year

    @property
    def n_years(self) -> int:
        """Number of calendar years in the closed interval."""
        return self.end_year - self.start_year + 1

    def __str__(self) -> str:
        return f"{self.start_year}-{self.end_year}"


@dataclass(frozen=True)
class AnnualSeries:
    """Immutable year-indexed sequence with a kind and a unit tag."""

    kind: SeriesKind
    unit: Unit
    years: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        years = tuple(int(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        if len(years) != len(values):
            raise DomainError("years and values must have equal length")
        if not years:
            raise EmptySlice("a series needs at least one point")
        if any(b <= a for a, b in zip(years, years[1:])):
            raise DomainError("years must be strictly increasing with no duplicates")
        if any(not math.isfinite(v) for v in values):
            raise DomainError("series values must be finite")
        if any(v <= 0.0 for v in values):
            raise DomainError(f"{self.kind.value} values must be strictly positive")
        if self.unit not in KIND_UNITS[self.kind]:
            raise KindError(
                f"unit {self.unit.value} is not valid for kind {self.kind.value}"
            )

    @classmethod
    def from_points(
        cls, kind: SeriesKind, unit: Unit, points: Iterable[tuple[int, float]]
    ) -> "AnnualSeries":
        pts = sorted(points)
        return cls(kind, unit, tuple(y for y, _ in pts), tuple(v for _, v in pts))

    def __len__(self) -> int:
        return len(self.years)

    @property
    def first_year(self) -> int:
        return self.years[0]

    @property
    def last_year(self) -> int:
        return self.years[-1]

    def has_year(self, year: int) -> bool:
        return year in set(self.years)

    def value_at(self, year: int) -> float:
        try:
            return self.values[self.years.index(year)]
        except ValueError:
            raise EmptySlice(f"series has no value for year {year}") from None

    def years_array(self) -> np.ndarray:
        return np.asarray(self.years, dtype=float)

    def values_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def to_points(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.values))

    def is_contiguous(self) -> bool:
        return self.last_year - self.first_year + 1 == len(self.years)

    def with_data(
        self,
        years: Sequence[int],
        values: Sequence[float],
        kind: SeriesKind | None = None,
        unit: Unit | None = None,
    ) -> "AnnualSeries":
        """Build a sibling series, preserving kind/unit unless overridden."""
        return AnnualSeries(
            kind if kind is not None else self.kind,
            unit if unit is not None else self.unit,
            tuple(years),
            tuple(values),
        )


def slice_series(s: AnnualSeries, p: Period) -> AnnualSeries:
    """Restrict ``s`` to the closed year interval of ``p``.

    Raises EmptySlice when the period does not overlap the series.
    """
    points = [(y, v) for y, v in zip(s.years, s.values) if p.start_year <= y <= p.end_year]
    if not points:
        raise EmptySlice(
            f"period {p} does not overlap series covering {s.first_year}-{s.last_year}"
        )
    return AnnualSeries.from_points(s.kind, s.unit, points)


def common_years(a: AnnualSeries, b: AnnualSeries) -> tuple[int, ...]:
    """Years present in both series, ascending."""
    shared = sorted(set(a.years) & set(b.years))
    if not shared:
        raise EmptySlice("series share no years")
    return tuple(shared)


def aligned_values(a: AnnualSeries, b: AnnualSeries) -> tuple[tuple[int, ...], np.ndarray, np.ndarray]:
    """Values of both series on their common years."""
    years = common_years(a, b)
    va = np.array([a.value_at(y) for y in years])
    vb = np.array([b.value_at(y) for y in years])
    return years, va, vb
