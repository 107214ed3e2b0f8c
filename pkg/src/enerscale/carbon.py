"""Emissions scaling, the revised Kaya decomposition, and the one-box atmosphere.

The atmosphere model is a single linear sink: d(delta)/dt = kappa*C - sigma*delta,
where delta is the CO2 concentration perturbation above the pre-industrial
baseline. The sink rate sigma acts on the instantaneous perturbation (the
observations behind its default value used decadal averages; the difference
is a documented simplification).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainError, EmptySlice
from .growth import GrowthMethod, growth_rate
from .reconstruction import WealthSeries
from .series import AnnualSeries, Period, SeriesKind, aligned_values, slice_series
from .units import EJ_PER_YR_PER_GW, Quantity, Unit

#: Default linear sink rate band supported by the observational record.
SIGMA_BAND = (0.019, 0.027)


@dataclass(frozen=True)
class CarbonCycleParams:
    """Sink rate (1/yr), airborne conversion (ppmv/GtC) and baseline (ppmv)."""

    sigma: float = 0.023
    kappa_a: float = 0.47
    preindustrial: float = 275.0
    allow_sigma_out_of_band: bool = False

    def __post_init__(self) -> None:
        if self.sigma <= 0 or self.kappa_a <= 0 or self.preindustrial <= 0:
            raise DomainError("carbon-cycle parameters must be strictly positive")
        low, high = SIGMA_BAND
        if not self.allow_sigma_out_of_band and not (low <= self.sigma <= high):
            raise DomainError(
                f"sigma={self.sigma} outside the supported band {SIGMA_BAND}; "
                "pass allow_sigma_out_of_band=True to override"
            )


@dataclass(frozen=True)
class AtmosphereState:
    """CO2 perturbation above the pre-industrial baseline at a point in time."""

    year: float
    delta_co2: float

    def __post_init__(self) -> None:
        if self.delta_co2 < 0:
            raise DomainError("concentration perturbation cannot be negative")


@dataclass(frozen=True)
class CarbonizationEstimate:
    """Carbonization of energy and the emissions-to-wealth scaling over a period.

    ``c`` is the period-mean carbon intensity of primary energy, GtC per EJ.
    ``lambda_c`` follows the tabulated convention for the emissions/wealth
    scaling: the concentration source per unit cumulative production,
    kappa_a * C / W, in ppmv yr^-1 per quadrillion 2010 USD. Dividing by
    kappa_a recovers the emission-mass form in GtC yr^-1 per quadrillion.
    """

    period: Period
    c: float
    eta_c: float
    lambda_c: float | None = None
    lambda_c_std: float | None = None

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise DomainError("carbonization must be positive")


def carbonization_series(emissions: AnnualSeries, energy: AnnualSeries) -> AnnualSeries:
    """Per-year carbon intensity C/E in GtC per EJ."""
    years, c_values, e_values = aligned_values(emissions, energy)
    if energy.unit is Unit.GW:
        e_values = e_values * EJ_PER_YR_PER_GW
    return AnnualSeries(
        SeriesKind.CARBONIZATION,
        Unit.GTC_PER_EJ,
        years,
        tuple(float(v) for v in c_values / e_values),
    )


def carbonization(
    emissions: AnnualSeries,
    energy: AnnualSeries,
    p: Period,
    wealth: WealthSeries | None = None,
    params: CarbonCycleParams = CarbonCycleParams(),
    method: GrowthMethod = GrowthMethod.ENDPOINT_LOG,
) -> CarbonizationEstimate:
    """Period statistics of carbon intensity, and of emissions/wealth scaling
    when a wealth series is supplied."""
    c_series = carbonization_series(emissions, energy)
    c_window = slice_series(c_series, p)
    eta_c = growth_rate(c_series, p, method).value
    lambda_c = lambda_c_std = None
    if wealth is not None:
        years, c_values, w_values = aligned_values(emissions, wealth.series)
        in_window = [
            (kc / w) * params.kappa_a * 1e3  # per quadrillion = 1000 T$
            for year, kc, w in zip(years, c_values, w_values)
            if p.start_year <= year <= p.end_year
        ]
        if not in_window:
            raise EmptySlice(f"no emissions/wealth overlap inside {p}")
        arr = np.asarray(in_window)
        lambda_c = float(arr.mean())
        lambda_c_std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return CarbonizationEstimate(
        period=p,
        c=float(c_window.values_array().mean()),
        eta_c=eta_c,
        lambda_c=lambda_c,
        lambda_c_std=lambda_c_std,
    )


@dataclass(frozen=True)
class KayaComponents:
    """Endpoint growth rates of the Kaya factors over one period, fraction/yr.

    ``residual`` is eta_pop + eta_affluence - eta_productivity + eta_carbonization
    minus the measured emissions growth; it vanishes identically for endpoint
    log rates.
    """

    period: Period
    eta_pop: float
    eta_affluence: float
    eta_productivity: float
    eta_carbonization: float
    eta_emissions: float

    @property
    def residual(self) -> float:
        return (
            self.eta_pop
            + self.eta_affluence
            - self.eta_productivity
            + self.eta_carbonization
            - self.eta_emissions
        )


def _ratio_growth(
    numerator: AnnualSeries,
    denominator: AnnualSeries,
    p: Period,
    method: GrowthMethod,
) -> float:
    """Growth rate of the per-year ratio of two aligned series."""
    years, num, den = aligned_values(numerator, denominator)
    ratio = num / den
    if method is GrowthMethod.ENDPOINT_LOG:
        try:
            i0 = years.index(p.start_year)
            i1 = years.index(p.end_year)
        except ValueError:
            raise EmptySlice(f"ratio series does not cover both endpoints of {p}") from None
        return float(np.log(ratio[i1] / ratio[i0]) / p.span)
    mask = [(p.start_year <= y <= p.end_year) for y in years]
    yrs = np.asarray(years, dtype=float)[mask]
    return float(np.polyfit(yrs, np.log(ratio[mask]), 1)[0])


def kaya_decomposition(
    pop: AnnualSeries,
    gdp: AnnualSeries,
    energy: AnnualSeries,
    emissions: AnnualSeries,
    p: Period,
    method: GrowthMethod = GrowthMethod.ENDPOINT_LOG,
) -> KayaComponents:
    """Decompose emissions growth into population, affluence, productivity and
    carbonization rates."""
    from .growth import energy_productivity  # local import keeps module deps one-way

    eps = energy_productivity(gdp, energy)
    c_series = carbonization_series(emissions, energy)
    return KayaComponents(
        period=p,
        eta_pop=growth_rate(pop, p, method).value,
        eta_affluence=_ratio_growth(gdp, pop, p, method),
        eta_productivity=growth_rate(eps, p, method).value,
        eta_carbonization=growth_rate(c_series, p, method).value,
        eta_emissions=growth_rate(emissions, p, method).value,
    )


def predicted_emissions_growth(eta_c: float, lambda_eps: float) -> float:
    """Emissions growth implied by constant scaling: eta_c + lambda*eps."""
    return eta_c + lambda_eps


EmissionsRate = Union[float, Callable[[float], float]]


def step_atmosphere(
    state: AtmosphereState,
    emissions_rate: EmissionsRate,
    params: CarbonCycleParams = CarbonCycleParams(),
    dt: float = 0.25,
) -> AtmosphereState:
    """Advance the perturbation one step with classical fourth-order Runge-Kutta.

    ``emissions_rate`` is either a constant (GtC/yr, held fixed across the
    step) or a callable of the year, sampled at the substage times. For
    constant emissions the exact solution
    delta(t) = (kappa*C/sigma)(1 - exp(-sigma t)) + delta0 exp(-sigma t)
    is matched at fourth order in dt.
    """
    if not 0.0 < dt <= 1.0:
        raise DomainError("dt must be in (0, 1] years")
    source: Callable[[float], float]
    if callable(emissions_rate):
        source = emissions_rate
    else:
        constant = float(emissions_rate)
        source = lambda _t: constant  # noqa: E731 - tiny closure

    def derivative(t: float, delta: float) -> float:
        return params.kappa_a * source(t) - params.sigma * delta

    t0, d0 = state.year, state.delta_co2
    k1 = derivative(t0, d0)
    k2 = derivative(t0 + dt / 2.0, d0 + dt * k1 / 2.0)
    k3 = derivative(t0 + dt / 2.0, d0 + dt * k2 / 2.0)
    k4 = derivative(t0 + dt, d0 + dt * k3)
    return AtmosphereState(
        year=t0 + dt, delta_co2=d0 + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    )


def _scale_to_ej_per_tusd(scale: Quantity) -> float:
    if scale.unit is Unit.GW_PER_TUSD:
        return scale.value * EJ_PER_YR_PER_GW
    raise DomainError("scaling must be expressed in GW per T$2010")


def committed_equilibrium(
    w: Quantity,
    scale: Quantity,
    c: Quantity,
    params: CarbonCycleParams = CarbonCycleParams(),
) -> Quantity:
    """Equilibrium perturbation at which emissions from stock ``w`` balance sinks.

    delta_eq = (kappa * lambda * c / sigma) * W, in ppmv.
    """
    if w.unit is not Unit.TUSD:
        raise DomainError("cumulative production must be in T$2010")
    if c.unit is not Unit.GTC_PER_EJ:
        raise DomainError("carbonization must be in GtC per EJ")
    if w.value < 0 or c.value <= 0:
        raise DomainError("inputs must be positive")
    lam_ej = _scale_to_ej_per_tusd(scale)
    delta = params.kappa_a * lam_ej * c.value * w.value / params.sigma
    return Quantity(delta, Unit.PPMV)


def wealth_per_ppmv(
    scale: Quantity, c: Quantity, params: CarbonCycleParams = CarbonCycleParams()
) -> Quantity:
    """Reciprocal commitment coefficient sigma/(kappa*lambda*c), T$2010 per ppmv."""
    lam_ej = _scale_to_ej_per_tusd(scale)
    if c.unit is not Unit.GTC_PER_EJ or c.value <= 0:
        raise DomainError("carbonization must be positive, in GtC per EJ")
    return Quantity(
        params.sigma / (params.kappa_a * lam_ej * c.value), Unit.TUSD_PER_PPMV
    )


def max_carbonization_coefficient(
    scale: Quantity, params: CarbonCycleParams = CarbonCycleParams()
) -> float:
    """sigma/(kappa*lambda): GtC * T$ per (ppmv * EJ)."""
    return params.sigma / (params.kappa_a * _scale_to_ej_per_tusd(scale))


def max_carbonization(
    delta_target: Quantity,
    w: Quantity,
    scale: Quantity,
    params: CarbonCycleParams = CarbonCycleParams(),
) -> Quantity:
    """Largest carbonization compatible with stabilizing at ``delta_target``.

    c_max = (sigma / (kappa * lambda)) * delta / W; composing with
    ``committed_equilibrium`` at the same parameters is the identity.
    """
    if delta_target.unit is not Unit.PPMV:
        raise DomainError("stabilization target must be a ppmv perturbation")
    if w.unit is not Unit.TUSD or w.value <= 0 or delta_target.value <= 0:
        raise DomainError("inputs must be positive")
    c_max = max_carbonization_coefficient(scale, params) * delta_target.value / w.value
    return Quantity(c_max, Unit.GTC_PER_EJ)
