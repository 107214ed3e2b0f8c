"""Growth-rate estimation and the closed growth identities.

The default estimator is the endpoint log rate ln(x(t1)/x(t0))/(t1-t0): the
identity eta_Y = eta_E + eta_eps then holds exactly by log algebra. An OLS
estimator on log values is available as well, since period-average growth
rates can reasonably be read either way; both are reported in the docs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DomainError, EmptySlice
from .reconstruction import WealthSeries
from .series import AnnualSeries, Period, SeriesKind, aligned_values, slice_series
from .units import EJ_PER_YR_PER_GW, Quantity, Unit


class GrowthMethod(str, Enum):
    ENDPOINT_LOG = "endpoint_log"
    OLS_LOG = "ols_log"


@dataclass(frozen=True)
class GrowthRate:
    """A fractional growth rate (1/yr) with its period and estimator."""

    value: float
    period: Period
    method: GrowthMethod


@dataclass(frozen=True)
class RatesRow:
    """One period's measured and derived growth rates, in fraction/yr.

    ``predicted_eta_y`` is constructed as lambda_eps + eta_eps, never measured.
    """

    period: Period
    eta_w: float
    eta_e: float
    lambda_eps: float
    eta_i: float
    eta_eps: float
    eta_y: float

    @property
    def predicted_eta_y(self) -> float:
        return self.lambda_eps + self.eta_eps


def growth_rate(
    s: AnnualSeries, p: Period, method: GrowthMethod = GrowthMethod.ENDPOINT_LOG
) -> GrowthRate:
    """Average fractional growth of ``s`` over the closed period ``p``."""
    if method is GrowthMethod.ENDPOINT_LOG:
        if not (s.has_year(p.start_year) and s.has_year(p.end_year)):
            raise EmptySlice(f"series does not cover both endpoints of {p}")
        value = float(np.log(s.value_at(p.end_year) / s.value_at(p.start_year)) / p.span)
    else:
        window = slice_series(s, p)
        if len(window) < 2:
            raise EmptySlice(f"need at least two points in {p} for an OLS rate")
        value = float(np.polyfit(window.years_array(), np.log(window.values_array()), 1)[0])
    return GrowthRate(value=value, period=p, method=method)


def energy_productivity(gdp: AnnualSeries, energy: AnnualSeries) -> AnnualSeries:
    """Per-year production per unit energy, in T$2010 per EJ."""
    years, y_values, e_values = aligned_values(gdp, energy)
    if energy.unit is Unit.GW:
        e_values = e_values * EJ_PER_YR_PER_GW
    eps = y_values / e_values
    return AnnualSeries(
        SeriesKind.PRODUCTIVITY, Unit.TUSD_PER_EJ, years, tuple(float(v) for v in eps)
    )


def mean_scaled_productivity(scale: Quantity, eps: AnnualSeries, p: Period) -> float:
    """Period mean of lambda * eps(t), a fractional rate per year.

    ``scale`` is held fixed (conventionally at its full-sample mean) while the
    productivity series varies; GW/T$ times T$/EJ reduces to 1/yr through the
    fixed GW <-> EJ/yr factor.
    """
    if scale.unit is not Unit.GW_PER_TUSD:
        raise DomainError("scaled productivity needs the scaling in GW per T$2010")
    window = slice_series(eps, p)
    lam_ej = scale.value * EJ_PER_YR_PER_GW  # EJ/yr per T$
    return float(lam_ej * window.values_array().mean())


def predicted_energy_growth(scale: Quantity, eps: AnnualSeries, p: Period) -> GrowthRate:
    """Energy-demand growth implied by constant scaling: mean of lambda*eps."""
    value = mean_scaled_productivity(scale, eps, p)
    return GrowthRate(value=value, period=p, method=GrowthMethod.ENDPOINT_LOG)


def innovation_rate(
    s: AnnualSeries, p: Period, method: GrowthMethod = GrowthMethod.ENDPOINT_LOG
) -> GrowthRate:
    """Growth rate of a productivity or rate series (eta_eps, or eta_I when
    applied to the wealth-growth series)."""
    return growth_rate(s, p, method)


def predicted_gdp_growth(scale: Quantity, eps: AnnualSeries, p: Period) -> GrowthRate:
    """Production growth implied by constant scaling: lambda*eps + eta_eps."""
    value = mean_scaled_productivity(scale, eps, p) + growth_rate(eps, p).value
    return GrowthRate(value=value, period=p, method=GrowthMethod.ENDPOINT_LOG)


def wealth_growth_series(wealth: WealthSeries) -> AnnualSeries:
    """Per-year fractional wealth growth Y(t)/W(t), from first differences.

    The accumulation convention makes the first difference of W equal Y
    exactly, so this needs no external production series. The series starts
    one year after the wealth series does.
    """
    w = wealth.series.values_array()
    years = wealth.series.years[1:]
    rates = np.diff(w) / w[1:]
    return AnnualSeries(
        SeriesKind.RATE, Unit.PER_YR, tuple(years), tuple(float(r) for r in rates)
    )


def rates_table(
    gdp: AnnualSeries,
    energy: AnnualSeries,
    wealth: WealthSeries,
    periods: Sequence[Period],
    method: GrowthMethod = GrowthMethod.ENDPOINT_LOG,
    scale: Quantity | None = None,
) -> list[RatesRow]:
    """Measured and derived growth rates for each period.

    ``scale`` defaults to the mean energy/wealth ratio over the full overlap
    of the energy and wealth series.
    """
    from .scaling import scaling_series, scaling_stats  # local import avoids a cycle

    lam_series = scaling_series(energy, wealth)
    if scale is None:
        full = Period(lam_series.first_year, lam_series.last_year)
        scale = scaling_stats(lam_series, full).mean
    eps = energy_productivity(gdp, energy)
    eta_w_series = wealth_growth_series(wealth)
    rows = []
    for p in periods:
        rows.append(
            RatesRow(
                period=p,
                eta_w=growth_rate(wealth.series, p, method).value,
                eta_e=growth_rate(energy, p, method).value,
                lambda_eps=mean_scaled_productivity(scale, eps, p),
                eta_i=growth_rate(eta_w_series, p, method).value,
                eta_eps=growth_rate(eps, p, method).value,
                eta_y=growth_rate(gdp, p, method).value,
            )
        )
    return rows
