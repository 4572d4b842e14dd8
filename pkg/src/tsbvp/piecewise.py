"""Piecewise polynomial functions with exact extremum queries.

Nonlinearities, weights and boundary maps are all entered as piecewise
polynomials of degree at most three.  Coefficients are in the global
variable, lowest order first, so a piece [c0, c1] evaluates to c0 + c1 * x.
Extrema over a closed range are computed from piece endpoints plus the real
critical points of each piece, never by sampling; the worked problem data
hit exact equalities in their bound checks and sampling would miss them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = ["PiecewiseFunction", "CONTINUITY_WARN_TOL"]

CONTINUITY_WARN_TOL = 1e-9
_MAX_DEGREE = 3


@dataclass
class PiecewiseFunction:
    """Polynomial pieces of degree <= 3 between sorted breakpoints.

    extrapolation:
        "clamp"  evaluate at the nearest breakpoint outside the span
        "error"  raise ValueError outside the span
    """

    breakpoints: np.ndarray
    pieces: list = field(default_factory=list)
    extrapolation: str = "clamp"

    def __post_init__(self):
        self.breakpoints = np.asarray(self.breakpoints, dtype=float)
        if self.breakpoints.ndim != 1 or len(self.breakpoints) < 2:
            raise ValueError("need at least two breakpoints")
        if np.any(np.diff(self.breakpoints) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError(
                f"{len(self.breakpoints) - 1} pieces expected, got {len(self.pieces)}")
        self.pieces = [np.atleast_1d(np.asarray(c, dtype=float)) for c in self.pieces]
        for c in self.pieces:
            if len(c) > _MAX_DEGREE + 1:
                raise ValueError("piece degree above 3 is not supported")
        if self.extrapolation not in ("clamp", "error"):
            raise ValueError(f"unknown extrapolation mode {self.extrapolation!r}")
        self._warn_on_jumps()

    def _warn_on_jumps(self):
        for k in range(1, len(self.breakpoints) - 1):
            x = self.breakpoints[k]
            left = P.polyval(x, self.pieces[k - 1])
            right = P.polyval(x, self.pieces[k])
            if abs(left - right) > CONTINUITY_WARN_TOL:
                warnings.warn(
                    f"piecewise function jumps by {right - left:.3g} at x={x}",
                    stacklevel=3)

    @classmethod
    def constant(cls, value: float, lo: float = 0.0, hi: float = 1.0,
                 extrapolation: str = "clamp") -> "PiecewiseFunction":
        return cls(np.array([lo, hi]), [[float(value)]], extrapolation)

    @classmethod
    def from_config(cls, cfg: dict) -> "PiecewiseFunction":
        return cls(np.asarray(cfg["bp"], dtype=float),
                   [list(c) for c in cfg["poly"]],
                   cfg.get("extrapolation", "clamp"))

    def to_config(self) -> dict:
        return {
            "bp": [float(x) for x in self.breakpoints],
            "poly": [[float(c) for c in piece] for piece in self.pieces],
            "extrapolation": self.extrapolation,
        }

    @property
    def lo(self) -> float:
        return float(self.breakpoints[0])

    @property
    def hi(self) -> float:
        return float(self.breakpoints[-1])

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if self.extrapolation == "error":
            if np.any(arr < self.lo) or np.any(arr > self.hi):
                raise ValueError(
                    f"evaluation outside [{self.lo}, {self.hi}] with extrapolation='error'")
            xe = arr
        else:
            xe = np.clip(arr, self.lo, self.hi)
        idx = np.clip(np.searchsorted(self.breakpoints, xe, side="right") - 1,
                      0, len(self.pieces) - 1)
        out = np.empty_like(xe)
        for k in range(len(self.pieces)):
            mask = idx == k
            if np.any(mask):
                out[mask] = P.polyval(xe[mask], self.pieces[k])
        return float(out[0]) if scalar else out

    def _candidates(self, lo: float, hi: float):
        """Candidate abscissae for extrema of the restriction to [lo, hi]."""
        if lo > hi:
            raise ValueError(f"reversed extremum range [{lo}, {hi}]")
        if self.extrapolation == "error" and (lo < self.lo or hi > self.hi):
            raise ValueError(
                f"extremum range outside [{self.lo}, {self.hi}] with extrapolation='error'")
        clo, chi = max(lo, self.lo), min(hi, self.hi)
        cands = [lo, hi]
        if clo > chi:
            return cands  # range entirely in one clamped tail
        cands += [float(b) for b in self.breakpoints if clo <= b <= chi]
        for k, coeffs in enumerate(self.pieces):
            a, b = self.breakpoints[k], self.breakpoints[k + 1]
            a, b = max(a, clo), min(b, chi)
            if a > b:
                continue
            der = P.polyder(coeffs)
            if len(der) <= 1:
                continue  # constant or linear piece, extrema sit at endpoints
            if len(der) == 2:
                roots = np.array([-der[0] / der[1]]) if der[1] != 0 else np.array([])
            else:
                roots = np.roots(der[::-1])
            for r in np.atleast_1d(roots):
                if abs(np.imag(r)) < 1e-12:
                    x = float(np.real(r))
                    if a <= x <= b:
                        cands.append(x)
        return cands

    def extrema(self, lo: float, hi: float):
        """Exact (min, max) of the function over [lo, hi]."""
        xs = np.asarray(self._candidates(lo, hi), dtype=float)
        vals = self(xs)
        return float(np.min(vals)), float(np.max(vals))

    def min_on(self, lo: float, hi: float) -> float:
        return self.extrema(lo, hi)[0]

    def max_on(self, lo: float, hi: float) -> float:
        return self.extrema(lo, hi)[1]
