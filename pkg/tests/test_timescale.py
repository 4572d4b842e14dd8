"""Grid construction, jump operators, and point classification."""

import numpy as np
import pytest

from helpers import random_timescale
from tsbvp import (
    ContinuousInterval,
    DiscretePoints,
    GeometricFamily,
    build_timescale,
    classify,
    rho,
    sigma,
)
from tsbvp.errors import EmptyTimeScale, OverlappingSegments, PointNotInTimeScale


def test_closed_interval_basics():
    ts = build_timescale([ContinuousInterval(0.0, 1.0)], hmax=0.25)
    assert ts.tmin == 0.0 and ts.tmax == 1.0
    assert np.all(np.diff(ts.grid) <= 0.25 + 1e-15)
    assert np.all(ts.cell_continuous)
    mid = ts.grid[2]
    assert sigma(ts, mid) == mid and rho(ts, mid) == mid
    pc = classify(ts, mid)
    assert pc.left_dense and pc.right_dense


def test_sigma_rho_clamp_at_endpoints():
    ts = build_timescale([DiscretePoints([0.0, 1.0, 3.0])])
    assert sigma(ts, 3.0) == 3.0
    assert rho(ts, 0.0) == 0.0
    assert sigma(ts, 0.0) == 1.0
    assert rho(ts, 3.0) == 1.0
    assert ts.mu(0.0) == 1.0 and ts.mu(1.0) == 2.0 and ts.mu(3.0) == 0.0
    assert ts.nu(3.0) == 2.0 and ts.nu(0.0) == 0.0


def test_discrete_classification():
    ts = build_timescale([DiscretePoints([0.0, 1.0, 2.0])])
    pc = classify(ts, 1.0)
    assert pc.left_scattered and pc.right_scattered
    assert not pc.left_dense and not pc.right_dense
    assert not np.any(ts.cell_continuous)


def test_mixed_interval_and_points():
    ts = build_timescale([ContinuousInterval(0.0, 1.0), DiscretePoints([1.5, 2.0])],
                         hmax=0.5)
    assert sigma(ts, 1.0) == 1.5
    pc = classify(ts, 1.0)
    assert pc.left_dense and pc.right_scattered
    i = ts.index_of(1.0)
    assert ts.cell_continuous[i - 1] and not ts.cell_continuous[i]


def test_geometric_family_accumulates_at_limit():
    ts = build_timescale([GeometricFamily(limit=1.0, ratio=0.5, start=0.0)])
    g = ts.grid
    assert g[0] == 0.0 and g[-1] == 1.0
    assert np.all(np.diff(g) > 0)
    # gaps halve toward the limit and the tail below the merge width is dropped
    assert g[-2] >= 1.0 - 2e-12
    assert 1.0 - g[-2] >= ts.eps_merge
    expected_head = [0.0, 0.5, 0.75, 0.875]
    assert np.allclose(g[:4], expected_head, atol=0)
    pc = classify(ts, 1.0)
    assert pc.left_dense, "the limit point accumulates from the family side"
    assert classify(ts, 0.5).right_scattered


def test_geometric_family_decreasing_start():
    ts = build_timescale([GeometricFamily(limit=0.0, ratio=0.5, start=1.0)])
    g = ts.grid
    assert g[0] == 0.0 and g[-1] == 1.0
    assert classify(ts, 0.0).right_dense
    assert classify(ts, 1.0).left_scattered


def test_geometric_family_validation():
    with pytest.raises(ValueError):
        GeometricFamily(limit=1.0, ratio=1.5, start=0.0)
    with pytest.raises(ValueError):
        GeometricFamily(limit=1.0, ratio=0.0, start=0.0)
    with pytest.raises(ValueError):
        GeometricFamily(limit=1.0, ratio=0.5, start=1.0)


def test_nearby_points_merge():
    ts = build_timescale([DiscretePoints([0.0, 1e-15, 1.0])])
    assert len(ts.grid) == 2


def test_overlapping_intervals_raise():
    with pytest.raises(OverlappingSegments):
        build_timescale([ContinuousInterval(0.0, 1.0),
                         ContinuousInterval(0.5, 2.0)])


def test_touching_intervals_merge():
    ts = build_timescale([ContinuousInterval(0.0, 1.0),
                          ContinuousInterval(1.0, 2.0)], hmax=0.5)
    assert classify(ts, 1.0).left_dense and classify(ts, 1.0).right_dense


def test_empty_inputs_raise():
    with pytest.raises(EmptyTimeScale):
        build_timescale([])


def test_index_of_and_membership():
    ts = build_timescale([DiscretePoints([0.0, 0.5, 2.0])])
    assert ts.index_of(0.5) == 1
    with pytest.raises(PointNotInTimeScale):
        ts.index_of(0.25)
    with pytest.raises(PointNotInTimeScale):
        sigma(ts, 0.25)


def test_jump_operator_laws_on_random_scales():
    rng = np.random.default_rng(7)
    for _ in range(25):
        ts = random_timescale(rng, hmax=0.1)
        for t in ts.grid[:: max(1, len(ts.grid) // 10)]:
            t = float(t)
            s, r = sigma(ts, t), rho(ts, t)
            assert s >= t and r <= t
            if s > t:
                assert rho(ts, s) == t
            if r < t:
                assert sigma(ts, r) == t


def test_hmax_refines_only_continuous_cells():
    ts = build_timescale([DiscretePoints([0.0, 10.0]),
                          ContinuousInterval(20.0, 21.0)], hmax=0.25)
    assert sigma(ts, 0.0) == 10.0, "a scattered gap is never subdivided"
    run = ts.grid[(ts.grid >= 20.0) & (ts.grid <= 21.0)]
    assert np.all(np.diff(run) <= 0.25 + 1e-15)
