import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ermakov.grid import Grid, Interval, central_derivative, cumulative_from, derivative, simpson


@pytest.mark.parametrize("lo, hi, margin", [(1.0, 1.0, 0.0), (0.0, 1.0, 0.5), (0.0, 1.0, -0.1), (0.0, np.inf, 0.0)])
def test_interval_rejects_bad_bounds(lo, hi, margin):
    with pytest.raises(ValueError):
        Interval(lo, hi, margin)


def test_grid_spacing_and_endpoints():
    g = Grid(Interval(-1.0, 1.0, 0.1), 19)
    assert g.spacing == pytest.approx(1.8 / 18)
    assert g.x[0] == pytest.approx(-0.9) and g.x[-1] == pytest.approx(0.9)
    assert not g.x.flags.writeable


def test_grid_rejects_too_few_points():
    with pytest.raises(ValueError):
        Grid(Interval(0.0, 1.0), 8)


def test_mid_index_is_centre_for_odd_grid():
    g = Grid(Interval(-2.0, 2.0), 101)
    assert g.x[g.mid_index] == pytest.approx(0.0, abs=1e-15)


def test_derivative_is_fourth_order():
    errs = []
    for n in (201, 401):
        g = Grid(Interval(0.0, 2.0), n)
        errs.append(np.max(np.abs(derivative(np.sin(g.x), g.spacing) - np.cos(g.x))))
    assert errs[0] / errs[1] > 12


def test_central_derivative():
    x = np.linspace(-1, 1, 11)
    assert np.allclose(central_derivative(np.exp, x, 1e-3), np.exp(x), atol=1e-11)


def test_simpson_and_cumulative():
    g = Grid(Interval(0.0, np.pi), 1001)
    assert simpson(np.sin(g.x), g.spacing) == pytest.approx(2.0, abs=1e-11)
    acc = cumulative_from(np.cos(g.x), g.x, 1.0)
    assert np.allclose(acc, np.sin(g.x) - np.sin(1.0), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5), st.integers(16, 500))
def test_grid_points_stay_inside(lo, width, n):
    iv = Interval(lo, lo + width, width / 10)
    g = Grid(iv, n)
    assert iv.contains(g.x)
    assert len(g.x) == n
