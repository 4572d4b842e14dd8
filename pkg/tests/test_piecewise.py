"""Piecewise polynomial evaluation, extrapolation, and exact extrema."""

import numpy as np
import pytest

from tsbvp import PiecewiseFunction


def make_ramp():
    # 1 on [0,1], rises with slope 4 to 3 on [1,1.5], flat 3 afterwards
    return PiecewiseFunction(
        np.array([0.0, 1.0, 1.5, 3.0]),
        [[1.0], [-3.0, 4.0], [3.0]])


def test_evaluation_inside_span():
    f = make_ramp()
    assert f(0.5) == 1.0
    assert f(1.25) == pytest.approx(2.0, abs=1e-15)
    assert f(2.0) == 3.0
    out = f(np.array([0.0, 1.0, 1.5]))
    assert np.allclose(out, [1.0, 1.0, 3.0], atol=1e-15)


def test_clamp_extrapolation():
    f = make_ramp()
    assert f(-10.0) == 1.0
    assert f(99.0) == 3.0


def test_error_extrapolation():
    f = PiecewiseFunction(np.array([0.0, 1.0]), [[0.0, 1.0]], extrapolation="error")
    assert f(0.5) == 0.5
    with pytest.raises(ValueError):
        f(1.5)
    with pytest.raises(ValueError):
        f.extrema(-0.5, 0.5)


def test_construction_validation():
    with pytest.raises(ValueError):
        PiecewiseFunction(np.array([1.0, 0.0]), [[1.0]])
    with pytest.raises(ValueError):
        PiecewiseFunction(np.array([0.0, 1.0]), [[1.0], [2.0]])
    with pytest.raises(ValueError):
        PiecewiseFunction(np.array([0.0, 1.0]), [[1.0, 1.0, 1.0, 1.0, 1.0]])
    with pytest.raises(ValueError):
        PiecewiseFunction(np.array([0.0]), [])


def test_jump_warns():
    with pytest.warns(UserWarning):
        PiecewiseFunction(np.array([0.0, 1.0, 2.0]), [[0.0], [1.0]])


def test_interior_critical_point_found_exactly():
    # 2x - x^2 peaks at x = 1, strictly between breakpoints
    f = PiecewiseFunction(np.array([0.0, 2.0]), [[0.0, 2.0, -1.0]])
    lo, hi = f.extrema(0.0, 2.0)
    assert hi == pytest.approx(1.0, abs=1e-15)
    assert lo == pytest.approx(0.0, abs=1e-15)
    assert f.max_on(0.0, 0.4) == pytest.approx(f(0.4), abs=1e-15)


def test_cubic_critical_points():
    # x^3 - 3x has turning points at +-1
    f = PiecewiseFunction(np.array([-2.0, 2.0]), [[0.0, -3.0, 0.0, 1.0]])
    lo, hi = f.extrema(-2.0, 2.0)
    assert lo == pytest.approx(-2.0, abs=1e-12)
    assert hi == pytest.approx(2.0, abs=1e-12)
    assert f.min_on(-0.5, 2.0) == pytest.approx(-2.0, abs=1e-12)


def test_extrema_range_in_clamped_tail():
    f = make_ramp()
    assert f.extrema(5.0, 9.0) == (3.0, 3.0)
    assert f.extrema(-4.0, 0.5) == (1.0, 1.0)
    with pytest.raises(ValueError):
        f.extrema(2.0, 1.0)


def test_constant_factory_and_config_round_trip():
    c = PiecewiseFunction.constant(2.5)
    assert c(-1.0) == 2.5 and c(0.5) == 2.5 and c(7.0) == 2.5
    f = make_ramp()
    g = PiecewiseFunction.from_config(f.to_config())
    xs = np.linspace(-1.0, 4.0, 37)
    assert np.allclose(f(xs), g(xs), atol=0)
