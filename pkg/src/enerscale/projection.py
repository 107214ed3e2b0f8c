"""Forward scenario engine for committed concentration projections.

A scenario grows cumulative production exponentially (rates are continuous,
d ln/dt), decarbonizes the energy mix at a configurable rate, integrates the
one-box atmosphere, and records the committed equilibrium concentration at
every step. Identical scenarios produce bit-identical trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .carbon import AtmosphereState, CarbonCycleParams, step_atmosphere
from .errors import DomainError
from .series import AnnualSeries
from .units import DAYS_PER_YEAR, EJ_PER_YR_PER_GW, Quantity, Unit


@dataclass(frozen=True)
class Scenario:
    """Forward-run configuration.

    Units: wealth in T$2010, scaling in GW per T$2010, carbonization in
    GtC/EJ, rates in fraction/yr, concentrations in ppmv.
    """

    start_year: float
    horizon_years: float
    w0: float
    lambda_gw: float
    c0: float
    eta_w: float
    eta_c: float = 0.0
    delta0: float = 0.0
    carbon_params: CarbonCycleParams = field(default_factory=CarbonCycleParams)
    dt: float = 0.25

    def __post_init__(self) -> None:
        if self.horizon_years <= 0:
            raise DomainError("horizon must be positive")
        if not 0.0 < self.dt <= 1.0:
            raise DomainError("dt must be in (0, 1]")
        if min(self.w0, self.lambda_gw, self.c0) <= 0:
            raise DomainError("w0, lambda and c0 must be positive")
        if self.delta0 < 0:
            raise DomainError("initial perturbation cannot be negative")

    @property
    def lambda_ej(self) -> float:
        """Scaling in EJ/yr per T$2010."""
        return self.lambda_gw * EJ_PER_YR_PER_GW

    def wealth_at(self, year: float) -> float:
        return self.w0 * math.exp(self.eta_w * (year - self.start_year))

    def carbonization_at(self, year: float) -> float:
        return self.c0 * math.exp(self.eta_c * (year - self.start_year))

    def emissions_at(self, year: float) -> float:
        """GtC/yr source under the scaling assumption C = lambda*c*W."""
        return self.lambda_ej * self.carbonization_at(year) * self.wealth_at(year)

    def committed_delta_at(self, year: float) -> float:
        """Equilibrium perturbation for the wealth and carbonization at ``year``."""
        p = self.carbon_params
        return p.kappa_a * self.emissions_at(year) / p.sigma


@dataclass(frozen=True)
class TrajectoryPoint:
    year: float
    wealth: float
    energy_ej: float
    emissions_gtc: float
    delta_co2: float
    committed_delta: float
    concentration: float
    committed_concentration: float


@dataclass(frozen=True)
class Trajectory:
    scenario: Scenario
    points: tuple[TrajectoryPoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def years(self) -> tuple[float, ...]:
        return tuple(p.year for p in self.points)

    def at_year(self, year: float, tol: float = 1e-9) -> TrajectoryPoint:
        for point in self.points:
            if abs(point.year - year) <= tol:
                return point
        raise DomainError(f"trajectory has no step at year {year}")

    def first_crossing(self, committed_concentration: float) -> float | None:
        """First grid year whose committed concentration reaches the threshold."""
        for point in self.points:
            if point.committed_concentration >= committed_concentration:
                return point.year
        return None


def _point(s: Scenario, year: float, delta: float) -> TrajectoryPoint:
    params = s.carbon_params
    wealth = s.wealth_at(year)
    committed = s.committed_delta_at(year)
    return TrajectoryPoint(
        year=year,
        wealth=wealth,
        energy_ej=s.lambda_ej * wealth,
        emissions_gtc=s.emissions_at(year),
        delta_co2=delta,
        committed_delta=committed,
        concentration=params.preindustrial + delta,
        committed_concentration=params.preindustrial + committed,
    )


def run_scenario(s: Scenario) -> Trajectory:
    """Integrate a scenario over its horizon.

    Wealth and carbonization follow their closed forms; the concentration
    perturbation is advanced by the fourth-order atmosphere stepper with the
    analytic emissions path sampled at the substage times.
    """
    n_steps = round(s.horizon_years / s.dt)
    if abs(n_steps * s.dt - s.horizon_years) > 1e-9:
        n_steps = math.ceil(s.horizon_years / s.dt)
    state = AtmosphereState(year=s.start_year, delta_co2=s.delta0)
    points = [_point(s, state.year, state.delta_co2)]
    for _ in range(n_steps):
        state = step_atmosphere(state, s.emissions_at, s.carbon_params, s.dt)
        points.append(_point(s, state.year, state.delta_co2))
    return Trajectory(scenario=s, points=tuple(points))


def committed_curve(
    w_values: Sequence[float],
    scale: Quantity,
    c: Quantity,
    params: CarbonCycleParams = CarbonCycleParams(),
) -> list[tuple[float, float]]:
    """(W, delta_eq) pairs tracing the equilibrium line."""
    from .carbon import committed_equilibrium

    pairs = []
    for w in w_values:
        delta = committed_equilibrium(Quantity(float(w), Unit.TUSD), scale, c, params)
        pairs.append((float(w), delta.value))
    return pairs


@dataclass(frozen=True)
class CapacityRequirement:
    """New non-fossil capacity needed to absorb energy-demand growth."""

    gw_per_year: float
    gw_per_day: float


def required_clean_capacity(energy: Quantity, eta_e: float) -> CapacityRequirement:
    """Capacity additions covering growth ``eta_e`` of consumption ``energy``."""
    if eta_e < 0:
        raise DomainError("growth rate must be nonnegative")
    if energy.unit is Unit.GW:
        total_gw = energy.value
    elif energy.unit is Unit.EJ_PER_YR:
        total_gw = energy.to(Unit.GW).value
    else:
        raise DomainError("energy must be in GW or EJ/yr")
    per_year = total_gw * eta_e
    return CapacityRequirement(gw_per_year=per_year, gw_per_day=per_year / DAYS_PER_YEAR)


def halving_time(params: CarbonCycleParams = CarbonCycleParams()) -> float:
    """Years for the gap to the committed equilibrium to halve: ln(2)/sigma."""
    return math.log(2.0) / params.sigma


@dataclass(frozen=True)
class SteadyStateResult:
    """Outcome of freezing the economy at a given year."""

    trajectory: Trajectory
    freeze_year: float
    freeze_wealth: float
    asymptote_delta: float

    @property
    def asymptote_concentration(self) -> float:
        params = self.trajectory.scenario.carbon_params
        return params.preindustrial + self.asymptote_delta


def steady_state_commitment(
    s: Scenario, freeze_year: float, settle_years: float = 300.0
) -> SteadyStateResult:
    """Run the scenario to ``freeze_year``, then hold the economy constant.

    After the freeze both wealth and carbonization stop changing, so the
    perturbation relaxes toward kappa*lambda*c*W/sigma; the returned
    trajectory covers the growth phase plus ``settle_years`` of relaxation.
    """
    if not s.start_year <= freeze_year:
        raise DomainError("freeze year precedes the scenario start")
    grow_years = freeze_year - s.start_year
    if grow_years > 0:
        growth_phase = run_scenario(
            Scenario(
                start_year=s.start_year,
                horizon_years=grow_years,
                w0=s.w0,
                lambda_gw=s.lambda_gw,
                c0=s.c0,
                eta_w=s.eta_w,
                eta_c=s.eta_c,
                delta0=s.delta0,
                carbon_params=s.carbon_params,
                dt=s.dt,
            )
        )
        head = growth_phase.points
        last = head[-1]
        frozen_delta0 = last.delta_co2
    else:
        head = ()
        frozen_delta0 = s.delta0
    frozen = Scenario(
        start_year=freeze_year,
        horizon_years=settle_years,
        w0=s.wealth_at(freeze_year),
        lambda_gw=s.lambda_gw,
        c0=s.carbonization_at(freeze_year),
        eta_w=0.0,
        eta_c=0.0,
        delta0=frozen_delta0,
        carbon_params=s.carbon_params,
        dt=s.dt,
    )
    tail = run_scenario(frozen)
    points = tuple(head[:-1]) + tail.points if head else tail.points
    asymptote = frozen.committed_delta_at(freeze_year)
    return SteadyStateResult(
        trajectory=Trajectory(scenario=frozen, points=points),
        freeze_year=freeze_year,
        freeze_wealth=frozen.w0,
        asymptote_delta=asymptote,
    )


def historical_spinup_delta(
    emissions: AnnualSeries,
    params: CarbonCycleParams = CarbonCycleParams(),
    end_year: int | None = None,
    delta0: float = 0.0,
    dt: float = 0.25,
) -> float:
    """Perturbation obtained by integrating observed annual emissions.

    Each calendar year's emission rate is held constant across that year
    (the data are annual totals). Used by the optional spin-up start mode.
    """
    if not emissions.is_contiguous():
        raise DomainError("spin-up needs a contiguous emissions series")
    last = emissions.last_year if end_year is None else end_year
    state = AtmosphereState(year=float(emissions.first_year), delta_co2=delta0)
    steps_per_year = round(1.0 / dt)
    for year in range(emissions.first_year, last):
        rate = emissions.value_at(year)
        for _ in range(steps_per_year):
            state = step_atmosphere(state, rate, params, dt)
    return state.delta_co2
