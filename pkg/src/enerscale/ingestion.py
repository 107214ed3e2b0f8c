"""Loading, validation and export of delimited observational series.

Input files are comma-separated with a header row and one row per year:
a ``year`` column (integer) and one value column (decimal, ``.`` radix,
no thousands separators). Extra columns are ignored, which lets a file
carry provenance columns such as ``source``. Ingestion never interpolates;
infilling is an explicit reconstruction step.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import math

import numpy as np

from .errors import DomainError, EmptySlice, ParseError, SchemaError
from .series import AnnualSeries, Period, SeriesKind, slice_series
from .units import Unit


@dataclass(frozen=True)
class DataSourceDescriptor:
    """Where and how to read one series from disk."""

    path: Path
    kind: SeriesKind
    unit: Unit
    year_column: str = "year"
    value_column: str = "value"
    scale: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", Path(self.path))
        if self.scale <= 0:
            raise DomainError("descriptor scale must be positive")
        if not self.year_column or not self.value_column:
            raise SchemaError("year_column and value_column must be nonempty")


@dataclass(frozen=True)
class ManifestEntry:
    """A named descriptor plus its validation policy."""

    name: str
    descriptor: DataSourceDescriptor
    contiguous: bool = True


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating one series; empty means no findings."""

    gaps: tuple[tuple[int, int], ...] = ()
    nonpositive_count: int = 0
    duplicate_years: tuple[int, ...] = ()
    coverage: Period | None = None

    def is_empty(self) -> bool:
        return not self.gaps and self.nonpositive_count == 0 and not self.duplicate_years

    def to_dict(self) -> dict:
        return {
            "gaps": [list(g) for g in self.gaps],
            "nonpositive_count": self.nonpositive_count,
            "duplicate_years": list(self.duplicate_years),
            "coverage": None
            if self.coverage is None
            else [self.coverage.start_year, self.coverage.end_year],
            "empty": self.is_empty(),
        }


@dataclass(frozen=True)
class RatioStats:
    mean: float
    std: float
    n: int


def load_series(d: DataSourceDescriptor) -> AnnualSeries:
    """Read one series from disk, scale it, and tag kind and unit.

    Raises ParseError for malformed rows (with the offending row number),
    SchemaError for missing columns and DomainError for sign violations.
    """
    try:
        handle = open(d.path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot open {d.path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in (d.year_column, d.value_column):
            if column not in header:
                raise SchemaError(f"{d.path}: missing column {column!r} (header: {header})")
        points: list[tuple[int, float]] = []
        for row_number, row in enumerate(reader, start=2):
            raw_year = (row.get(d.year_column) or "").strip()
            raw_value = (row.get(d.value_column) or "").strip()
            try:
                year = int(raw_year)
                value = float(raw_value)
            except ValueError:
                raise ParseError(
                    f"{d.path}: row {row_number}: cannot parse year={raw_year!r} value={raw_value!r}"
                ) from None
            if not math.isfinite(value):
                raise ParseError(f"{d.path}: row {row_number}: non-finite value")
            value *= d.scale
            if value <= 0.0:
                raise DomainError(
                    f"{d.path}: row {row_number}: nonpositive value {value!r} for kind {d.kind.value}"
                )
            points.append((year, value))
    if not points:
        raise ParseError(f"{d.path}: no data rows")
    points.sort()
    years = [y for y, _ in points]
    if len(set(years)) != len(years):
        dupes = sorted({y for y in years if years.count(y) > 1})
        raise DomainError(f"{d.path}: duplicate years {dupes}")
    return AnnualSeries.from_points(d.kind, d.unit, points)


def validate(s: AnnualSeries, require_contiguous: bool = True) -> ValidationReport:
    """Enumerate gaps and violations without modifying the series.

    Series invariants (ordering, positivity) are enforced at construction,
    so a report built from an in-memory series can only flag interior gaps.
    The report is pure: validating twice yields identical results.
    """
    gaps: list[tuple[int, int]] = []
    if require_contiguous:
        present = set(s.years)
        missing_run: list[int] = []
        for year in range(s.first_year, s.last_year + 1):
            if year in present:
                if missing_run:
                    gaps.append((missing_run[0], missing_run[-1]))
                    missing_run = []
            else:
                missing_run.append(year)
    coverage = (
        Period(s.first_year, s.last_year) if s.last_year > s.first_year else None
    )
    return ValidationReport(gaps=tuple(gaps), coverage=coverage)


def production_consumption_ratio(
    prod: AnnualSeries, cons: AnnualSeries, p: Period
) -> RatioStats:
    """Mean and standard deviation of annual production/consumption ratios."""
    prod_p = slice_series(prod, p)
    cons_p = slice_series(cons, p)
    years = sorted(set(prod_p.years) & set(cons_p.years))
    if not years:
        raise EmptySlice(f"production and consumption share no years over {p}")
    ratios = np.array([prod_p.value_at(y) / cons_p.value_at(y) for y in years])
    std = float(ratios.std(ddof=1)) if len(ratios) > 1 else 0.0
    return RatioStats(mean=float(ratios.mean()), std=std, n=len(ratios))


def write_series(s: AnnualSeries, path: Path | str, value_column: str = "value") -> Path:
    """Export a series in the canonical format understood by ``load_series``.

    Values are rendered with shortest round-trip decimal formatting, so
    load_series(write_series(s)) reproduces ``s`` bit for bit.
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["year", value_column])
        for year, value in zip(s.years, s.values):
            writer.writerow([year, repr(value)])
    return path


def canonical_descriptor(
    path: Path | str, kind: SeriesKind, unit: Unit, value_column: str = "value"
) -> DataSourceDescriptor:
    """Descriptor for a file produced by ``write_series``."""
    return DataSourceDescriptor(
        path=Path(path), kind=kind, unit=unit, year_column="year", value_column=value_column
    )


def load_manifest(path: Path | str) -> dict[str, ManifestEntry]:
    """Read a JSON manifest binding series names to data source descriptors.

    Relative paths are resolved against the manifest's directory.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot open manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"manifest {path} is not valid JSON: {exc}") from exc
    entries: dict[str, ManifestEntry] = {}
    for name, spec in raw.items():
        try:
            descriptor = DataSourceDescriptor(
                path=path.parent / spec["path"],
                kind=SeriesKind(spec["kind"]),
                unit=Unit(spec["unit"]),
                year_column=spec.get("year_column", "year"),
                value_column=spec.get("value_column", "value"),
                scale=float(spec.get("scale", 1.0)),
            )
        except KeyError as exc:
            raise SchemaError(f"manifest entry {name!r} lacks required field {exc}") from None
        entries[name] = ManifestEntry(
            name=name, descriptor=descriptor, contiguous=bool(spec.get("contiguous", True))
        )
    return entries
