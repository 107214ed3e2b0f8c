"""Estimation of the energy-to-cumulative-production scaling and derived potentials.

The central empirical object is the per-year ratio of primary energy
consumption to accumulated production, reported in gigawatts per trillion
2010 US dollars. Statistics use the sample (n-1) standard deviation and a
normal 1.96 factor for the 95% confidence halfwidth; periods are closed
intervals including both endpoint years.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .reconstruction import WealthSeries, cumulative_production
from .series import AnnualSeries, Period, SeriesKind, aligned_values, slice_series
from .units import EJ_PER_YR_PER_GW, Quantity, Unit


@dataclass(frozen=True)
class ScalingEstimate:
    """Scaling statistics over a named period."""

    period: Period
    mean: Quantity
    std: Quantity
    ci95_halfwidth: Quantity
    trend_per_year: float

    def __post_init__(self) -> None:
        if self.std.value < 0 or self.ci95_halfwidth.value < 0:
            raise DomainError("dispersion statistics cannot be negative")


@dataclass(frozen=True)
class PotentialParams:
    """Dissipation timescale used to express rates as stored potentials."""

    tau_d: float = 86400.0  # seconds

    def __post_init__(self) -> None:
        if self.tau_d <= 0:
            raise DomainError("tau_d must be positive")


def scaling_series(energy: AnnualSeries, wealth: WealthSeries) -> AnnualSeries:
    """Per-year energy/wealth ratio in GW per T$2010 on the common years."""
    years, e_values, w_values = aligned_values(energy, wealth.series)
    if energy.unit is Unit.EJ_PER_YR:
        e_values = e_values / EJ_PER_YR_PER_GW
    elif energy.unit is not Unit.GW:  # pragma: no cover - kinds force EJ/yr or GW
        raise DomainError(f"unsupported energy unit {energy.unit.value}")
    ratios = e_values / w_values
    return AnnualSeries(
        SeriesKind.SCALING, Unit.GW_PER_TUSD, years, tuple(float(r) for r in ratios)
    )


def scaling_stats(ls: AnnualSeries, p: Period) -> ScalingEstimate:
    """Mean, sample std, normal 95% CI halfwidth and OLS log-trend over ``p``."""
    window = slice_series(ls, p)
    values = window.values_array()
    mean = float(values.mean())
    std = float(values.std(ddof=1)) if len(values) > 1 else 0.0
    halfwidth = 1.96 * std / np.sqrt(len(values)) if len(values) > 1 else 0.0
    if len(values) > 1:
        trend = float(np.polyfit(window.years_array(), np.log(values), 1)[0])
    else:
        trend = 0.0
    unit = ls.unit
    return ScalingEstimate(
        period=p,
        mean=Quantity(mean, unit),
        std=Quantity(std, unit),
        ci95_halfwidth=Quantity(float(halfwidth), unit),
        trend_per_year=trend,
    )


def w1_sensitivity(
    gdp: AnnualSeries,
    energy: AnnualSeries,
    w1: Quantity,
    factor: float,
    p: Period = Period(1980, 2017),
) -> ScalingEstimate:
    """Scaling statistics after rescaling the initial stock by ``factor``."""
    if factor <= 0:
        raise DomainError("W(1) scaling factor must be positive")
    wealth = cumulative_production(gdp, Quantity(w1.value * factor, w1.unit))
    return scaling_stats(scaling_series(energy, wealth), p)


def potential_per_dollar(scale: Quantity, pp: PotentialParams = PotentialParams()) -> Quantity:
    """Stored potential per unit of cumulative production, in J per 2010 USD.

    A scaling of lambda GW/T$ corresponds to lambda * tau_d joules per dollar
    (1 GW/T$ = 1e9 W / 1e12 $ = 1e-3 W/$).
    """
    if scale.unit is not Unit.GW_PER_TUSD:
        raise DomainError("potential_per_dollar expects GW per T$2010")
    watts_per_dollar = scale.value * 1e9 / 1e12
    return Quantity(watts_per_dollar * pp.tau_d, Unit.J_PER_USD)


def civilization_potential(energy: Quantity, pp: PotentialParams = PotentialParams()) -> Quantity:
    """Total stored potential G = E * tau_d in joules."""
    if energy.unit is Unit.GW:
        watts = energy.value * 1e9
    elif energy.unit is Unit.EJ_PER_YR:
        watts = energy.to(Unit.GW).value * 1e9
    else:
        raise DomainError("civilization_potential expects energy in GW or EJ/yr")
    return Quantity(watts * pp.tau_d, Unit.JOULE)
