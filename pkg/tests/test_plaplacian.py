"""Power nonlinearity: values, monotonicity, conjugates, round trips."""

import math

import numpy as np
import pytest

from tsbvp import PExponent, conjugate_exponent, phi, phi_inverse
from tsbvp.errors import InvalidExponent


def test_identity_at_p_two():
    s = np.linspace(-7.0, 7.0, 101)
    assert np.allclose(phi(s, 2.0), s, rtol=0, atol=0)


def test_known_values():
    assert phi(4.0, 1.5) == pytest.approx(2.0, abs=1e-15)
    assert phi(-9.0, 1.5) == pytest.approx(-3.0, abs=1e-15)
    assert phi(8.0, 3.0) == pytest.approx(64.0, abs=1e-12)
    assert phi(0.0, 1.5) == 0.0
    assert phi_inverse(64.0, 3.0) == pytest.approx(8.0, abs=1e-12)


def test_odd_symmetry():
    rng = np.random.default_rng(1)
    s = rng.uniform(0.01, 50.0, 200)
    for p in (1.5, 2.0, 3.0, 2.7):
        assert np.allclose(phi(-s, p), -phi(s, p), rtol=1e-15)


def test_strictly_increasing_on_sorted_samples():
    rng = np.random.default_rng(2)
    s = np.sort(rng.uniform(-20.0, 20.0, 500))
    for p in (1.5, 2.0, 3.0):
        out = phi(s, p)
        assert np.all(np.diff(out) > 0)


def test_conjugate_exponent():
    assert conjugate_exponent(1.5) == pytest.approx(3.0, abs=1e-15)
    assert conjugate_exponent(2.0) == pytest.approx(2.0, abs=1e-15)
    assert conjugate_exponent(3.0) == pytest.approx(1.5, abs=1e-15)
    for p in (1.2, 1.5, 2.0, 5.0):
        q = conjugate_exponent(p)
        assert conjugate_exponent(q) == pytest.approx(p, rel=1e-14)
        assert 1.0 / p + 1.0 / q == pytest.approx(1.0, abs=1e-14)


def test_round_trip_both_directions():
    s = np.concatenate([-np.geomspace(1e-6, 1e6, 50), np.geomspace(1e-6, 1e6, 50)])
    for p in (1.5, 2.0, 3.0):
        back = phi_inverse(phi(s, p), p)
        assert np.allclose(back, s, rtol=1e-12, atol=0)
        fwd = phi(phi_inverse(s, p), p)
        assert np.allclose(fwd, s, rtol=1e-12, atol=0)


def test_scalar_in_scalar_out():
    out = phi(2.0, 3.0)
    assert isinstance(out, float)
    arr = phi(np.array([1.0, 2.0]), 3.0)
    assert arr.shape == (2,)


def test_exponent_validation():
    for bad in (1.0, 0.5, 0.0, -2.0, math.nan, math.inf):
        with pytest.raises(InvalidExponent):
            PExponent(bad)
    with pytest.raises(InvalidExponent):
        phi(1.0, 1.0)
    with pytest.raises(InvalidExponent):
        phi_inverse(1.0, 0.9)
    assert PExponent(1.5).p == 1.5
