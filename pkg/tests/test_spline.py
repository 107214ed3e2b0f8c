import numpy as np
import pytest

from enerscale.errors import NonPositiveResult, TooFewPoints
from enerscale.reconstruction import NaturalCubicSpline, ppp_to_mer, spline_infill
from enerscale.series import AnnualSeries, SeriesKind
from enerscale.units import Unit


def textbook_natural_spline(x, y, xq):
    """Independent oracle: assemble the full linear system for the knot second
    derivatives and solve it densely, then evaluate the standard piecewise form.

    Deliberately a different code path (dense solve) from the package's
    tridiagonal elimination.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    h = np.diff(x)
    A = np.zeros((n, n))
    rhs = np.zeros(n)
    A[0, 0] = 1.0
    A[n - 1, n - 1] = 1.0
    for i in range(1, n - 1):
        A[i, i - 1] = h[i - 1]
        A[i, i] = 2.0 * (h[i - 1] + h[i])
        A[i, i + 1] = h[i]
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1])
    m = np.linalg.solve(A, rhs)
    out = np.empty_like(np.asarray(xq, dtype=float))
    for j, q in enumerate(np.atleast_1d(xq)):
        i = min(max(np.searchsorted(x, q, side="right") - 1, 0), n - 2)
        a = (x[i + 1] - q) / h[i]
        b = (q - x[i]) / h[i]
        out[j] = (
            a * y[i] + b * y[i + 1]
            + ((a**3 - a) * m[i] + (b**3 - b) * m[i + 1]) * h[i] ** 2 / 6.0
        )
    return out


def test_constant_knots_reproduced():
    s = AnnualSeries(SeriesKind.GDP_PPP, Unit.TUSD_PER_YR, (0, 1, 2, 3), (1.0, 1.0, 1.0, 1.0))
    out = spline_infill(s)
    assert out.values == (1.0, 1.0, 1.0, 1.0)


def test_linear_data_reproduced():
    years = (0, 3, 7, 12)
    values = tuple(2.0 * y + 5.0 for y in years)
    s = AnnualSeries(SeriesKind.GDP_PPP, Unit.TUSD_PER_YR, years, values)
    out = spline_infill(s, log_values=False)
    for year, value in out.to_points():
        assert value == pytest.approx(2.0 * year + 5.0, abs=1e-9)


def test_against_textbook_oracle_on_historical_knots(snapshot, recon):
    """The infilled value at year 1500... is checked against an independently
    coded dense-solve natural spline (and scipy agrees with both)."""
    mer = ppp_to_mer(snapshot.gdp_ppp, recon.ratio)
    x = mer.years_array()
    logy = np.log(mer.values_array())
    probe_years = np.array([500.0, 1500.0, 1750.0, 1925.0, 1960.0])

    expected = np.exp(textbook_natural_spline(x, logy, probe_years))

    infilled = spline_infill(mer)
    got = np.array([infilled.value_at(int(y)) for y in probe_years])
    np.testing.assert_allclose(got, expected, rtol=1e-9)

    scipy_interp = pytest.importorskip("scipy.interpolate")
    ref = np.exp(scipy_interp.CubicSpline(x, logy, bc_type="natural")(probe_years))
    np.testing.assert_allclose(got, ref, rtol=1e-9)


def test_knots_exact_on_historical_record(snapshot, recon):
    mer = ppp_to_mer(snapshot.gdp_ppp, recon.ratio)
    infilled = spline_infill(mer)
    for year, value in mer.to_points():
        assert infilled.value_at(year) == pytest.approx(value, rel=1e-9)


def test_log_space_output_positive(snapshot, recon):
    mer = ppp_to_mer(snapshot.gdp_ppp, recon.ratio)
    out = spline_infill(mer)
    assert out.is_contiguous()
    assert min(out.values) > 0.0


def test_too_few_points():
    s = AnnualSeries(SeriesKind.GDP_PPP, Unit.TUSD_PER_YR, (0, 1, 2), (1.0, 2.0, 3.0))
    with pytest.raises(TooFewPoints):
        spline_infill(s)


def test_linear_space_undershoot_raises():
    # Steep descent into a long flat tail drives the linear-space cubic
    # below zero inside the wide gap.
    s = AnnualSeries(
        SeriesKind.GDP_PPP,
        Unit.TUSD_PER_YR,
        (1, 2, 3, 4, 16),
        (1000.0, 500.0, 100.0, 1.0, 1.0),
    )
    with pytest.raises(NonPositiveResult):
        spline_infill(s, log_values=False)
    # The default log-space fit handles the same knots.
    assert min(spline_infill(s).values) > 0.0


def test_spline_rejects_unsorted_input():
    from enerscale.errors import DomainError

    with pytest.raises(DomainError):
        NaturalCubicSpline(np.array([0.0, 2.0, 1.0, 3.0]), np.zeros(4))


def test_evaluation_outside_range_rejected():
    from enerscale.errors import DomainError

    spline = NaturalCubicSpline(np.arange(4.0), np.arange(4.0))
    with pytest.raises(DomainError):
        spline(np.array([5.0]))
