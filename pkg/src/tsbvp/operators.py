"""Integral operators whose fixed points solve the three boundary value problems.

Three problem families are covered, each with a one-dimensional p-Laplacian
on a bounded time scale containing 0 and T:

* thermistor: a nonlocal source f(u) / (nabla integral of f(u))^2 with the
  multipoint flux and value conditions tied together by a beta weight.  The
  operator output is nonnegative, nonincreasing and concave.
* quasilinear: a source f(u) + h(t) integrated from the right, producing a
  nonnegative, nondecreasing, concave output whose left value equals the
  inverted flux at the marker point eta.
* delay: the quasilinear structure with a deviated argument omega(t) <= t,
  history function psi on [-r, 0], weight a(t) and a boundary map B0 acting
  on the initial flux.

All nested integrals reduce to one suffix (or prefix) pass over the grid
followed by a cumulative integral of the inverted flux, so one application
costs O(n).

Boundary residuals are reported against the identities the operators
actually enforce.  For the quasilinear family that is u(0) = inverted flux
at eta together with the reconstruction of u(T) from u(eta); the often
quoted pair "flux zero at 0, u(T) = u(eta)" is not satisfied by this
operator family (a one-line check with p = 2 and constant source shows it),
so it is not what gets certified here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import (
    GridFunction,
    _delta_cells,
    _nabla_cells,
    _prefix,
    delta_derivative,
)
from .errors import DegenerateDenominator, DelayOutOfRange
from .piecewise import PiecewiseFunction
from .plaplacian import PExponent, phi, phi_inverse
from .timescale import TimeScale

__all__ = [
    "ThermistorSpec",
    "QuasilinearSpec",
    "DelaySpec",
    "BivariateComposite",
    "EPS_DENOMINATOR",
    "thermistor_source",
    "thermistor_initial_flux",
    "thermistor_flux",
    "thermistor_boundary_value",
    "apply_thermistor",
    "apply_quasilinear",
    "apply_delay",
    "split_delay_domains",
    "boundary_residuals",
]

#: a normalizing integral below this magnitude is refused
EPS_DENOMINATOR = 1e-14


def _require_grid_point(ts: TimeScale, t: float, name: str) -> int:
    idx = ts.index_of(t)
    if not (ts.tmin < t < ts.tmax):
        raise ValueError(f"{name} must lie strictly inside ({ts.tmin}, {ts.tmax})")
    return idx


@dataclass
class ThermistorSpec:
    """Data of the nonlocal thermistor problem."""

    ts: TimeScale
    f: PiecewiseFunction
    lam: float
    beta: float
    eta: float
    p: PExponent
    eta_index: int = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.p, (int, float)):
            self.p = PExponent(float(self.p))
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not (0.0 < self.beta < 1.0):
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        self.eta_index = _require_grid_point(self.ts, self.eta, "eta")
        if self.f.min_on(self.f.lo, self.f.hi) < 0:
            raise ValueError("source f must be nonnegative")


@dataclass
class QuasilinearSpec:
    """Data of the quasilinear problem with forcing term h."""

    ts: TimeScale
    f: PiecewiseFunction
    h: PiecewiseFunction
    eta: float
    p: PExponent
    eta_index: int = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.p, (int, float)):
            self.p = PExponent(float(self.p))
        self.eta_index = _require_grid_point(self.ts, self.eta, "eta")
        if self.f.min_on(self.f.lo, self.f.hi) < 0:
            raise ValueError("source f must be nonnegative")
        if self.h.min_on(self.ts.tmin, self.ts.tmax) < 0:
            raise ValueError("forcing h must be nonnegative on [0, T]")


@dataclass
class BivariateComposite:
    """f(x1, x2) = g(c1 * x1 + c2 * x2) with g piecewise polynomial."""

    c1: float
    c2: float
    g: PiecewiseFunction

    def __call__(self, x1, x2):
        return self.g(self.c1 * np.asarray(x1, dtype=float)
                      + self.c2 * np.asarray(x2, dtype=float))


@dataclass
class DelaySpec:
    """Data of the delay problem with history psi and deviation omega."""

    ts: TimeScale
    history_ts: TimeScale
    f2: BivariateComposite
    a: PiecewiseFunction
    omega: PiecewiseFunction
    psi: PiecewiseFunction
    b0: PiecewiseFunction
    delta: float
    gam: float
    lam: float
    r: float
    p: PExponent

    def __post_init__(self):
        if isinstance(self.p, (int, float)):
            self.p = PExponent(float(self.p))
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not (0.0 < self.delta <= self.gam):
            raise ValueError("need 0 < delta <= gamma for the boundary map bounds")
        if self.r <= 0:
            raise ValueError("delay radius r must be positive")
        atol = 1e-9 * max(1.0, self.r)
        if abs(self.history_ts.tmax) > atol:
            raise ValueError("history time scale must end at 0")
        if abs(self.history_ts.tmin + self.r) > atol:
            raise ValueError(f"history time scale must start at -r = {-self.r}")
        w = self.omega(self.ts.grid)
        if np.any(w > self.ts.grid + 1e-12):
            raise ValueError("deviation must satisfy omega(t) <= t on the grid")


# -- thermistor ------------------------------------------------------------


def _thermistor_parts(spec: ThermistorSpec, u: GridFunction):
    ts = spec.ts
    fu = spec.f(u.values)
    denom = float(_prefix(_nabla_cells(ts, fu))[-1])
    if abs(denom) <= EPS_DENOMINATOR:
        raise DegenerateDenominator(
            f"nabla integral of f(u) is {denom:.3g}, cannot normalize")
    source = spec.lam * fu / denom**2
    src_prefix = _prefix(_nabla_cells(ts, source))
    initial_flux = -(spec.lam * spec.beta / (1.0 - spec.beta)) * src_prefix[spec.eta_index]
    flux = spec.lam * src_prefix - initial_flux
    inv = phi_inverse(flux, spec.p.p)
    inv_prefix = _prefix(_delta_cells(ts, inv))
    boundary = (inv_prefix[-1] - spec.beta * inv_prefix[spec.eta_index]) / (1.0 - spec.beta)
    return source, initial_flux, flux, inv_prefix, boundary


def thermistor_source(spec: ThermistorSpec, u: GridFunction) -> GridFunction:
    """Normalized source lambda f(u) / (nabla integral of f(u))^2."""
    source, *_ = _thermistor_parts(spec, u)
    return GridFunction(spec.ts, source)


def thermistor_initial_flux(spec: ThermistorSpec, u: GridFunction) -> float:
    """Scalar value of phi_p(u') at 0 encoded by the multipoint flux condition."""
    _, initial_flux, *_ = _thermistor_parts(spec, u)
    return float(initial_flux)


def thermistor_flux(spec: ThermistorSpec, u: GridFunction) -> GridFunction:
    """Grid function s -> nabla integral of the scaled source minus the initial flux.

    This is phi_p(-u') of the operator output, nonnegative and nondecreasing.
    """
    _, _, flux, _, _ = _thermistor_parts(spec, u)
    return GridFunction(spec.ts, flux)


def thermistor_boundary_value(spec: ThermistorSpec, u: GridFunction) -> float:
    """Left boundary value of the operator output."""
    return float(_thermistor_parts(spec, u)[4])


def apply_thermistor(spec: ThermistorSpec, u: GridFunction) -> GridFunction:
    """One application of the thermistor operator."""
    *_, inv_prefix, boundary = _thermistor_parts(spec, u)
    return GridFunction(spec.ts, boundary - inv_prefix)


# -- quasilinear -----------------------------------------------------------


def _suffix_nabla(ts: TimeScale, w: np.ndarray) -> np.ndarray:
    prefix = _prefix(_nabla_cells(ts, w))
    return prefix[-1] - prefix


def apply_quasilinear(spec: QuasilinearSpec, u: GridFunction) -> GridFunction:
    """One application of the quasilinear operator."""
    ts = spec.ts
    w = spec.f(u.values) + spec.h(ts.grid)
    inv = phi_inverse(_suffix_nabla(ts, w), spec.p.p)
    out = inv[spec.eta_index] + _prefix(_delta_cells(ts, inv))
    return GridFunction(ts, out)


# -- delay -----------------------------------------------------------------


def _deviated_values(spec: DelaySpec, u: GridFunction) -> np.ndarray:
    """u(omega(t)) with psi supplying values for omega(t) < 0."""
    ts = spec.ts
    w = spec.omega(ts.grid)
    if np.any(w < -spec.r - 1e-12):
        worst = float(np.min(w))
        raise DelayOutOfRange(f"omega reaches {worst}, below -r = {-spec.r}")
    out = np.empty_like(w)
    neg = w < 0.0
    if np.any(neg):
        out[neg] = spec.psi(w[neg])
    if np.any(~neg):
        # exact at grid points, linear in between for off-grid deviations
        out[~neg] = np.interp(w[~neg], ts.grid, u.values)
    return out


def split_delay_domains(spec: DelaySpec):
    """Grid points with omega(t) < 0 and with omega(t) >= 0, in that order."""
    w = spec.omega(spec.ts.grid)
    neg = w < 0.0
    return spec.ts.grid[neg], spec.ts.grid[~neg]


def apply_delay(spec: DelaySpec, u: GridFunction) -> GridFunction:
    """One application of the delay operator."""
    ts = spec.ts
    fvals = np.asarray(spec.f2(u.values, _deviated_values(spec, u)), dtype=float)
    w = spec.lam * spec.a(ts.grid) * fvals
    inv = phi_inverse(_suffix_nabla(ts, w), spec.p.p)
    out = float(spec.b0(inv[0])) + _prefix(_delta_cells(ts, inv))
    hist = (spec.history_ts, spec.psi(spec.history_ts.grid))
    return GridFunction(ts, out, history=hist)


# -- boundary residuals ----------------------------------------------------


def boundary_residuals(spec, v: GridFunction) -> dict:
    """Residuals of the boundary identities, reconstructed from v alone.

    The dictionary values vanish (up to quadrature rounding) when v is a
    fixed point of the corresponding operator.
    """
    ts = v.ts
    if isinstance(spec, ThermistorSpec):
        p = spec.p.p
        d0 = delta_derivative(v, ts.tmin)
        de = delta_derivative(v, spec.eta)
        return {
            "flux_multipoint": phi(d0, p) - spec.beta * phi(de, p),
            "value_multipoint": v(ts.tmax) - spec.beta * v(spec.eta),
        }
    if isinstance(spec, QuasilinearSpec):
        w = spec.f(v.values) + spec.h(ts.grid)
        inv = phi_inverse(_suffix_nabla(ts, w), spec.p.p)
        ramp = _prefix(_delta_cells(ts, inv))
        return {
            "left_value": v(ts.tmin) - float(inv[spec.eta_index]),
            "profile": v(ts.tmax) - v(spec.eta)
            - float(ramp[-1] - ramp[spec.eta_index]),
        }
    if isinstance(spec, DelaySpec):
        fvals = np.asarray(spec.f2(v.values, _deviated_values(spec, v)), dtype=float)
        w = spec.lam * spec.a(ts.grid) * fvals
        inv = phi_inverse(_suffix_nabla(ts, w), spec.p.p)
        ramp = _prefix(_delta_cells(ts, inv))
        return {
            "left_value": v(ts.tmin) - float(spec.b0(inv[0])),
            "profile": v(ts.tmax) - v(ts.tmin) - float(ramp[-1]),
        }
    raise TypeError(f"unsupported spec type: {type(spec).__name__}")
