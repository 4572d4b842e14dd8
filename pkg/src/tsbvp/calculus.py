"""Delta and nabla calculus on the canonical grid of a time scale.

Grid functions store one value per grid point.  Derivatives use the exact
jump quotient at scattered points and finite differences at dense points
(central in the interior of a continuous run, one sided at its ends).
Integrals are cell sums: a scattered cell [t_i, t_{i+1}] contributes
u(t_i) * (t_{i+1} - t_i) to the delta integral and u(t_{i+1}) * (t_{i+1} - t_i)
to the nabla integral, while a cell inside a continuous interval contributes
the trapezoid value to both.  All integral routines share one prefix-sum
pass per call, so cumulative outputs and two-point integrals agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ReversedBounds, UndefinedAtBoundary
from .timescale import TimeScale

__all__ = [
    "GridFunction",
    "grid_function",
    "sup_norm",
    "delta_derivative",
    "nabla_derivative",
    "delta_integral",
    "nabla_integral",
    "cumulative_delta_integral",
    "cumulative_nabla_integral",
]


@dataclass
class GridFunction:
    """Values of a real function on the canonical grid.

    ``history`` optionally carries a second (time scale, values) pair on a
    window ending at 0; it is ignored by the calculus routines and consumed
    only by the delay operator and the solution reports.  When a history is
    present, its value at 0 and ``values[0]`` may legitimately differ: the
    delay convention is that the main segment owns the point 0.
    """

    ts: TimeScale
    values: np.ndarray
    history: tuple[TimeScale, np.ndarray] | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.ts.grid.shape:
            raise ValueError(
                f"expected {len(self.ts.grid)} values, got {self.values.shape}")
        if self.history is not None:
            hts, hv = self.history
            hv = np.asarray(hv, dtype=float)
            if hv.shape != hts.grid.shape:
                raise ValueError("history values do not match the history grid")
            self.history = (hts, hv)

    def __call__(self, t: float) -> float:
        return float(self.values[self.ts.index_of(t)])


def grid_function(ts: TimeScale, f) -> GridFunction:
    """Sample a callable (or broadcast a constant) onto the grid."""
    if callable(f):
        vals = np.asarray(f(ts.grid), dtype=float)
        if vals.ndim == 0:
            vals = np.full(len(ts.grid), float(vals))
    else:
        vals = np.full(len(ts.grid), float(f))
    return GridFunction(ts, vals)


def sup_norm(u: GridFunction) -> float:
    """max |u| over the grid."""
    return float(np.max(np.abs(u.values)))


def delta_derivative(u: GridFunction, t: float) -> float:
    """Delta derivative at a grid point.

    Scattered points use the exact quotient (u(sigma(t)) - u(t)) / mu(t).
    Dense interior points of a continuous run use a central difference,
    run edges a one-sided one.  The right endpoint of the scale has
    sigma(tmax) = tmax, so the quotient degenerates there and the call
    raises UndefinedAtBoundary.
    """
    ts, v, g = u.ts, u.values, u.ts.grid
    i = ts.index_of(t)
    if i == len(g) - 1:
        raise UndefinedAtBoundary("delta derivative undefined at tmax")
    left_cont = i > 0 and ts.cell_continuous[i - 1]
    right_cont = ts.cell_continuous[i]
    if left_cont and right_cont:
        return float((v[i + 1] - v[i - 1]) / (g[i + 1] - g[i - 1]))
    return float((v[i + 1] - v[i]) / (g[i + 1] - g[i]))


def nabla_derivative(u: GridFunction, t: float) -> float:
    """Nabla derivative at a grid point, the mirror of delta_derivative."""
    ts, v, g = u.ts, u.values, u.ts.grid
    i = ts.index_of(t)
    if i == 0:
        raise UndefinedAtBoundary("nabla derivative undefined at tmin")
    left_cont = ts.cell_continuous[i - 1]
    right_cont = i < len(g) - 1 and ts.cell_continuous[i]
    if left_cont and right_cont:
        return float((v[i + 1] - v[i - 1]) / (g[i + 1] - g[i - 1]))
    return float((v[i] - v[i - 1]) / (g[i] - g[i - 1]))


def _delta_cells(ts: TimeScale, v: np.ndarray) -> np.ndarray:
    h = np.diff(ts.grid)
    trap = 0.5 * (v[:-1] + v[1:]) * h
    return np.where(ts.cell_continuous, trap, v[:-1] * h)


def _nabla_cells(ts: TimeScale, v: np.ndarray) -> np.ndarray:
    h = np.diff(ts.grid)
    trap = 0.5 * (v[:-1] + v[1:]) * h
    return np.where(ts.cell_continuous, trap, v[1:] * h)


def _prefix(cells: np.ndarray) -> np.ndarray:
    out = np.empty(len(cells) + 1)
    out[0] = 0.0
    np.cumsum(cells, out=out[1:])
    return out


def _integral(ts: TimeScale, v, a, b, cells_of) -> float:
    ia, ib = ts.index_of(a), ts.index_of(b)
    if ia > ib:
        raise ReversedBounds(f"integral bounds reversed: {a} > {b}")
    prefix = _prefix(cells_of(ts, np.asarray(v, dtype=float)))
    return float(prefix[ib] - prefix[ia])


def delta_integral(u: GridFunction, a: float, b: float) -> float:
    """Delta integral of u from a to b (both grid points, a <= b)."""
    return _integral(u.ts, u.values, a, b, _delta_cells)


def nabla_integral(u: GridFunction, a: float, b: float) -> float:
    """Nabla integral of u from a to b (both grid points, a <= b)."""
    return _integral(u.ts, u.values, a, b, _nabla_cells)


def cumulative_delta_integral(u: GridFunction) -> GridFunction:
    """Grid function t -> delta integral of u from tmin to t."""
    return GridFunction(u.ts, _prefix(_delta_cells(u.ts, u.values)))


def cumulative_nabla_integral(u: GridFunction) -> GridFunction:
    """Grid function t -> nabla integral of u from tmin to t."""
    return GridFunction(u.ts, _prefix(_nabla_cells(u.ts, u.values)))
