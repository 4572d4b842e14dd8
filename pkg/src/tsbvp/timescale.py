"""Bounded time scales: closed subsets of the reals built from segments.

A time scale is described by a list of segments, each either a closed
interval or a finite set of points.  A geometric generator is accepted as
config sugar for point families that accumulate at a limit; the family is
truncated once the remaining tail is narrower than the merge tolerance and
the accumulation point itself is always included.  Construction normalizes
the segments (sorts, merges touching intervals, absorbs points that fall
inside intervals, deduplicates points closer than the merge tolerance) and
lays down a canonical grid: every discrete point plus quadrature nodes that
subdivide each interval with spacing at most ``hmax``.

Jump operators follow the usual clamping conventions at the ends,
sigma(tmax) = tmax and rho(tmin) = tmin, so the endpoints classify as dense
on their outward side.  A truncated accumulation point keeps its dense side
even though the stored gap to its nearest neighbour is finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyTimeScale,
    OverlappingSegments,
    PointNotInTimeScale,
)

__all__ = [
    "ContinuousInterval",
    "DiscretePoints",
    "GeometricFamily",
    "PointClass",
    "TimeScale",
    "build_timescale",
    "sigma",
    "rho",
    "classify",
]

DEFAULT_EPS_MERGE = 1e-12
#: hard cap on generator expansion depth, guards eps_merge ~ 0
_MAX_FAMILY_DEPTH = 4096


@dataclass(frozen=True)
class ContinuousInterval:
    """Closed interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo >= self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class DiscretePoints:
    """Finite set of isolated points, kept sorted."""

    points: tuple

    def __init__(self, points):
        pts = tuple(sorted(float(p) for p in points))
        if not pts:
            raise ValueError("a discrete segment needs at least one point")
        if not all(np.isfinite(pts)):
            raise ValueError("discrete points must be finite")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class GeometricFamily:
    """Points limit - (limit - start) * ratio**k accumulating at ``limit``.

    ``start`` is the k = 0 member.  The expansion stops once the distance to
    the limit drops below the merge tolerance; the limit is then appended as
    an explicit point whose side facing the family is dense.
    """

    limit: float
    ratio: float
    start: float

    def __post_init__(self):
        if not (0.0 < self.ratio < 1.0):
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")
        if self.start == self.limit:
            raise ValueError("start must differ from the limit")
        if not (np.isfinite(self.limit) and np.isfinite(self.start)):
            raise ValueError("family endpoints must be finite")

    def expand(self, eps_merge: float):
        """Return (points including the limit, dense side of the limit)."""
        width = self.limit - self.start
        pts = []
        for k in range(_MAX_FAMILY_DEPTH):
            offset = width * self.ratio**k
            if abs(offset) < eps_merge or self.limit - offset == self.limit:
                break
            pts.append(self.limit - offset)
        pts.append(self.limit)
        side = "left" if self.start < self.limit else "right"
        return sorted(pts), side


@dataclass(frozen=True)
class PointClass:
    """Density classification of a grid point on each side."""

    left_dense: bool
    right_dense: bool

    @property
    def left_scattered(self) -> bool:
        return not self.left_dense

    @property
    def right_scattered(self) -> bool:
        return not self.right_dense

    def __str__(self):
        left = "left-dense" if self.left_dense else "left-scattered"
        right = "right-dense" if self.right_dense else "right-scattered"
        return f"{left}/{right}"


class TimeScale:
    """Normalized segments plus the canonical evaluation grid.

    Instances are produced by :func:`build_timescale` and are immutable.
    ``grid`` holds every discrete point and the quadrature nodes of each
    interval.  ``cell_continuous[i]`` says whether the cell
    [grid[i], grid[i+1]] lies inside one continuous interval, which is what
    the quadrature and classification routines branch on.
    """

    def __init__(self, intervals, points, accumulation_sides, grid,
                 cell_continuous, left_dense, right_dense, hmax, eps_merge):
        self.intervals = tuple(intervals)
        self.points = tuple(points)
        self.accumulation_sides = dict(accumulation_sides)
        self.grid = grid
        self.cell_continuous = cell_continuous
        self.left_dense = left_dense
        self.right_dense = right_dense
        self.hmax = float(hmax)
        self.eps_merge = float(eps_merge)
        for arr in (self.grid, self.cell_continuous, self.left_dense, self.right_dense):
            arr.flags.writeable = False

    # -- basic queries ----------------------------------------------------

    @property
    def tmin(self) -> float:
        return float(self.grid[0])

    @property
    def tmax(self) -> float:
        return float(self.grid[-1])

    @property
    def span(self) -> float:
        return self.tmax - self.tmin

    def __len__(self):
        return len(self.grid)

    def __repr__(self):
        return (f"TimeScale([{self.tmin}, {self.tmax}], {len(self.grid)} grid "
                f"points, {len(self.intervals)} interval(s))")

    def index_of(self, t: float) -> int:
        """Grid index of ``t``, or raise PointNotInTimeScale."""
        atol = 1e-12 * max(1.0, abs(self.tmin), abs(self.tmax))
        i = int(np.searchsorted(self.grid, t))
        for j in (i - 1, i, i + 1):
            if 0 <= j < len(self.grid) and abs(self.grid[j] - t) <= atol:
                return j
        raise PointNotInTimeScale(f"{t} is not a grid point of {self!r}")

    # -- jump operators ---------------------------------------------------

    def sigma(self, t: float) -> float:
        """Forward jump, with sigma(tmax) = tmax."""
        i = self.index_of(t)
        if self.right_dense[i]:
            return float(self.grid[i])
        return float(self.grid[i + 1])

    def rho(self, t: float) -> float:
        """Backward jump, with rho(tmin) = tmin."""
        i = self.index_of(t)
        if self.left_dense[i]:
            return float(self.grid[i])
        return float(self.grid[i - 1])

    def mu(self, t: float) -> float:
        """Forward graininess sigma(t) - t."""
        return self.sigma(t) - float(self.grid[self.index_of(t)])

    def nu(self, t: float) -> float:
        """Backward graininess t - rho(t)."""
        return float(self.grid[self.index_of(t)]) - self.rho(t)

    def classify(self, t: float) -> PointClass:
        i = self.index_of(t)
        return PointClass(bool(self.left_dense[i]), bool(self.right_dense[i]))


def _normalize_segments(segments, eps_merge):
    """Expand, sort, merge and cross-check raw segments."""
    intervals = []
    loose_points = []
    accumulation = {}

    for seg in segments:
        if isinstance(seg, ContinuousInterval):
            intervals.append(seg)
        elif isinstance(seg, DiscretePoints):
            loose_points.extend(seg.points)
        elif isinstance(seg, GeometricFamily):
            pts, side = seg.expand(eps_merge)
            loose_points.extend(pts)
            accumulation.setdefault(seg.limit, set()).add(side)
        else:
            raise TypeError(f"unsupported segment type: {type(seg).__name__}")

    intervals.sort(key=lambda iv: iv.lo)
    merged = []
    for iv in intervals:
        if merged and iv.lo < merged[-1].hi - eps_merge:
            raise OverlappingSegments(
                f"intervals [{merged[-1].lo}, {merged[-1].hi}] and "
                f"[{iv.lo}, {iv.hi}] overlap")
        if merged and iv.lo <= merged[-1].hi + eps_merge:
            merged[-1] = ContinuousInterval(merged[-1].lo, max(merged[-1].hi, iv.hi))
        else:
            merged.append(iv)

    loose_points.sort()
    points = []
    for p in loose_points:
        if points and p - points[-1] < eps_merge:
            continue
        if any(iv.lo - eps_merge <= p <= iv.hi + eps_merge for iv in merged):
            continue  # absorbed by an interval
        points.append(p)

    if not merged and not points:
        raise EmptyTimeScale("no segments given, or all segments empty")
    return merged, points, accumulation


def build_timescale(segments, hmax: float | None = None,
                    eps_merge: float = DEFAULT_EPS_MERGE) -> TimeScale:
    """Validate segments and assemble the canonical grid.

    Parameters
    ----------
    segments : iterable of ContinuousInterval | DiscretePoints | GeometricFamily
        Pairwise disjoint pieces of the time scale.  Touching intervals are
        merged; genuinely overlapping intervals raise OverlappingSegments.
    hmax : float, optional
        Quadrature node spacing cap inside continuous intervals.  Defaults
        to 1e-3 times the total span.
    eps_merge : float
        Points closer than this are treated as one; generator families are
        truncated once the remaining tail is this narrow.

    Returns
    -------
    TimeScale
    """
    if eps_merge < 0:
        raise ValueError("eps_merge must be nonnegative")
    segments = list(segments)
    if not segments:
        raise EmptyTimeScale("segment list is empty")
    intervals, points, accumulation = _normalize_segments(segments, eps_merge)

    all_lo = [iv.lo for iv in intervals] + points
    all_hi = [iv.hi for iv in intervals] + points
    tmin, tmax = min(all_lo), max(all_hi)
    if hmax is None:
        hmax = 1e-3 * (tmax - tmin) if tmax > tmin else 1.0
    if hmax <= 0:
        raise ValueError("hmax must be positive")

    # grid assembly: interval nodes are uniform with spacing <= hmax and the
    # interval index of every node is recorded for the cell flags
    parts = []
    iv_index = []
    for k, iv in enumerate(intervals):
        n = max(1, int(math.ceil((iv.hi - iv.lo) / hmax)))
        nodes = iv.lo + (iv.hi - iv.lo) * np.arange(n + 1) / n
        nodes[-1] = iv.hi
        parts.append(nodes)
        iv_index.append(np.full(n + 1, k))
    if points:
        parts.append(np.asarray(points, dtype=float))
        iv_index.append(np.full(len(points), -1))

    grid = np.concatenate(parts)
    iv_idx = np.concatenate(iv_index)
    order = np.argsort(grid, kind="stable")
    grid = grid[order]
    iv_idx = iv_idx[order]

    n = len(grid)
    cell_continuous = np.zeros(max(n - 1, 0), dtype=bool)
    if n > 1:
        cell_continuous = (iv_idx[:-1] >= 0) & (iv_idx[:-1] == iv_idx[1:])

    left_dense = np.zeros(n, dtype=bool)
    right_dense = np.zeros(n, dtype=bool)
    for i in range(n):
        k = iv_idx[i]
        if k >= 0:
            left_dense[i] = grid[i] > intervals[k].lo
            right_dense[i] = grid[i] < intervals[k].hi
    left_dense[0] = True
    right_dense[-1] = True
    atol = 1e-12 * max(1.0, abs(tmin), abs(tmax))
    for value, sides in accumulation.items():
        hits = np.nonzero(np.abs(grid - value) <= atol)[0]
        for i in hits:
            if "left" in sides:
                left_dense[i] = True
            if "right" in sides:
                right_dense[i] = True

    return TimeScale(intervals, points, accumulation, grid, cell_continuous,
                     left_dense, right_dense, hmax, eps_merge)


def sigma(ts: TimeScale, t: float) -> float:
    """Forward jump operator."""
    return ts.sigma(t)


def rho(ts: TimeScale, t: float) -> float:
    """Backward jump operator."""
    return ts.rho(t)


def classify(ts: TimeScale, t: float) -> PointClass:
    """Density classification of a grid point."""
    return ts.classify(t)
