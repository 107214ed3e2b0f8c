import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from enerscale.reconstruction import WealthSeries, cumulative_production
from enerscale.scaling import (
    PotentialParams,
    civilization_potential,
    potential_per_dollar,
    scaling_series,
    scaling_stats,
    w1_sensitivity,
)
from enerscale.series import AnnualSeries, Period, SeriesKind
from enerscale.units import EJ_PER_YR_PER_GW, Quantity, Unit


def synthetic_wealth(years, values):
    series = AnnualSeries(SeriesKind.WEALTH, Unit.TUSD, tuple(years), tuple(values))
    return WealthSeries(series, Quantity(values[0] * 0.5, Unit.TUSD), "synthetic")


def exact_scaling_pair(lambda_gw=4.0, n=20):
    years = tuple(range(2000, 2000 + n))
    wealth_values = tuple(100.0 * 1.02**i for i in range(n))
    energy_values = tuple(lambda_gw * w for w in wealth_values)
    wealth = synthetic_wealth(years, wealth_values)
    energy = AnnualSeries(SeriesKind.ENERGY, Unit.GW, years, energy_values)
    return energy, wealth


# ------------------------------------------------------------ exact recovery

def test_exact_scaling_recovered_with_zero_spread():
    energy, wealth = exact_scaling_pair(lambda_gw=4.0)
    stats = scaling_stats(scaling_series(energy, wealth), Period(2000, 2019))
    assert stats.mean.value == pytest.approx(4.0, rel=1e-12)
    assert stats.std.value <= 1e-12 * 4.0
    assert abs(stats.trend_per_year) < 1e-12


def test_exact_scaling_with_ej_unit():
    years = tuple(range(2000, 2010))
    wealth_values = tuple(50.0 + 3.0 * i for i in range(10))
    wealth = synthetic_wealth(years, wealth_values)
    energy = AnnualSeries(
        SeriesKind.ENERGY, Unit.EJ_PER_YR, years,
        tuple(2.5 * EJ_PER_YR_PER_GW * w for w in wealth_values),
    )
    stats = scaling_stats(scaling_series(energy, wealth), Period(2000, 2009))
    assert stats.mean.value == pytest.approx(2.5, rel=1e-12)
    assert stats.std.value <= 1e-12 * 2.5


@given(alpha=st.sampled_from([0.5, 2.0, 10.0]))
def test_scale_invariance(alpha):
    """Rescaling production and the initial stock rescales the ratio inversely."""
    years = tuple(range(1, 11))
    gdp_values = (1.0, 1.2, 1.5, 1.9, 2.0, 2.4, 2.8, 3.0, 3.3, 3.7)
    gdp = AnnualSeries(SeriesKind.GDP_MER, Unit.TUSD_PER_YR, years, gdp_values)
    energy = AnnualSeries(SeriesKind.ENERGY, Unit.GW, years, tuple(10.0 + i for i in range(10)))
    base = scaling_series(energy, cumulative_production(gdp, Quantity(5.0, Unit.TUSD)))
    scaled_gdp = AnnualSeries(
        SeriesKind.GDP_MER, Unit.TUSD_PER_YR, years, tuple(alpha * v for v in gdp_values)
    )
    scaled = scaling_series(
        energy, cumulative_production(scaled_gdp, Quantity(5.0 * alpha, Unit.TUSD))
    )
    np.testing.assert_allclose(
        scaled.values_array(), base.values_array() / alpha, rtol=1e-12
    )


def test_scaling_values_positive(snapshot, recon):
    lam = scaling_series(snapshot.energy, recon.wealth)
    assert min(lam.values) > 0


# ---------------------------------------------------------- snapshot numbers

def test_snapshot_scaling_mean(snapshot, recon):
    lam = scaling_series(snapshot.energy, recon.wealth)
    stats = scaling_stats(lam, Period(1980, 2017))
    assert 5.7 <= stats.mean.value <= 6.1
    assert stats.std.value <= 0.25
    assert stats.ci95_halfwidth.value == pytest.approx(
        1.96 * stats.std.value / np.sqrt(38), rel=1e-12
    )
    # secular drift is small and negative
    assert -0.005 < stats.trend_per_year < 0.0


def test_snapshot_first_decade(snapshot, recon):
    lam = scaling_series(snapshot.energy, recon.wealth)
    stats = scaling_stats(lam, Period(1980, 1990))
    assert stats.mean.value == pytest.approx(6.04, abs=0.2)


def test_single_year_ratio_against_hand_division(snapshot, recon):
    """Oracle: rebuild W(2010) with an independent cumulative sum over the
    reconstructed production and divide the 2010 energy value by hand."""
    lam = scaling_series(snapshot.energy, recon.wealth)
    years = np.array(recon.gdp.years)
    w_2010 = recon.w1.value + np.cumsum(recon.gdp.values)[years == 2010][0]
    expected = snapshot.energy.value_at(2010) / EJ_PER_YR_PER_GW / w_2010
    assert lam.value_at(2010) == pytest.approx(expected, rel=1e-12)


def test_constant_series_stats():
    s = AnnualSeries(SeriesKind.SCALING, Unit.GW_PER_TUSD, (2000, 2001, 2002), (5.0, 5.0, 5.0))
    stats = scaling_stats(s, Period(2000, 2002))
    assert stats.mean.value == 5.0
    assert stats.std.value == 0.0
    assert stats.trend_per_year == pytest.approx(0.0, abs=1e-15)


# -------------------------------------------------------------- sensitivity

def test_sensitivity_identity_factor(snapshot, recon):
    base = scaling_stats(
        scaling_series(snapshot.energy, recon.wealth), Period(1980, 2017)
    )
    same = w1_sensitivity(recon.gdp, snapshot.energy, recon.w1, 1.0)
    assert same.mean.value == pytest.approx(base.mean.value, rel=1e-12)


def test_sensitivity_to_doubled_initial_stock(snapshot, recon):
    doubled = w1_sensitivity(recon.gdp, snapshot.energy, recon.w1, 2.0)
    halved = w1_sensitivity(recon.gdp, snapshot.energy, recon.w1, 0.5)
    assert doubled.mean.value == pytest.approx(5.2, abs=0.2)
    assert halved.mean.value == pytest.approx(6.2, abs=0.2)


# ---------------------------------------------------------------- potentials

def test_potential_per_dollar_snapshot_scale():
    # 5.88e9 W / 1e12 $ * 86400 s = 508.032 J/$
    q = potential_per_dollar(Quantity(5.88, Unit.GW_PER_TUSD))
    assert q.value == pytest.approx(508.032, rel=1e-12)
    assert q.unit is Unit.J_PER_USD


def test_potential_per_dollar_headline_value():
    q = potential_per_dollar(Quantity(5.9, Unit.GW_PER_TUSD))
    assert q.value == pytest.approx(510.0, abs=1.0)


def test_potential_per_dollar_unit_bookkeeping():
    q = potential_per_dollar(Quantity(1.0, Unit.GW_PER_TUSD), PotentialParams(tau_d=1.0))
    assert q.value == pytest.approx(1e-3, rel=1e-12)


def test_civilization_potential_20tw():
    q = civilization_potential(Quantity(20000.0, Unit.GW))
    assert q.value == pytest.approx(1.728e18, rel=1e-12)
    assert q.unit is Unit.JOULE


def test_civilization_potential_small_values():
    assert civilization_potential(
        Quantity(1e-9, Unit.GW), PotentialParams(tau_d=1.0)
    ).value == pytest.approx(1.0)
