"""Shared builders for the tests: random scales and slow reference integrals."""

import numpy as np
from numpy.polynomial import polynomial as P

from tsbvp import ContinuousInterval, DiscretePoints, build_timescale


def random_segments(rng, allow_continuous=True):
    segments = []
    cursor = float(rng.uniform(-4.0, 4.0))
    for _ in range(int(rng.integers(1, 5))):
        if allow_continuous and rng.uniform() < 0.4:
            width = float(rng.uniform(0.3, 1.2))
            segments.append(ContinuousInterval(cursor, cursor + width))
            cursor += width
        else:
            count = int(rng.integers(1, 9))
            pts = np.unique(np.round(rng.uniform(cursor, cursor + 1.0, count), 3))
            segments.append(DiscretePoints(pts))
            cursor += 1.0
        # rounding moves points by at most 5e-4, so this gap keeps segments apart
        cursor += float(rng.uniform(0.2, 0.9))
    return segments


def random_timescale(rng, allow_continuous=True, hmax=None):
    """A small scale mixing discrete clusters and short continuous runs."""
    return build_timescale(random_segments(rng, allow_continuous), hmax=hmax)


def slow_point_measure_sum(ts, values, a, b, kind):
    """Forward-graininess sum for purely discrete scales, via sigma/rho lookups."""
    total = 0.0
    if kind == "delta":
        for i, t in enumerate(ts.grid):
            if a <= t < b:
                total += values[i] * (ts.sigma(t) - t)
    else:
        for i, t in enumerate(ts.grid):
            if a < t <= b:
                total += values[i] * (t - ts.rho(t))
    return total


def reference_poly_integral(ts, coeffs, a, b, kind):
    """Cell-by-cell reference: exact antiderivative on continuous cells,
    endpoint value times width on scattered ones."""
    anti = P.polyint(np.asarray(coeffs, dtype=float))
    total = 0.0
    ia, ib = ts.index_of(a), ts.index_of(b)
    g = ts.grid
    for i in range(ia, ib):
        lo, hi = g[i], g[i + 1]
        if ts.cell_continuous[i]:
            total += P.polyval(hi, anti) - P.polyval(lo, anti)
        elif kind == "delta":
            total += P.polyval(lo, coeffs) * (hi - lo)
        else:
            total += P.polyval(hi, coeffs) * (hi - lo)
    return total
