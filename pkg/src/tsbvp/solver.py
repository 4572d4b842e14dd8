"""Fixed point iteration for the integral operators.

The solved problems are stated as fixed point equations u = op(u), so the
solver is a damped Picard iteration: u <- (1 - theta) u + theta op(u).
Damping kicks in when the residual stops decreasing, which happens when the
plain iteration orbits around a fixed point instead of approaching it.

`find_three` looks for distinct fixed points by running the iteration from
several starting profiles spread over the norm slices of interest.  The
triple existence results are not constructive and Picard only reaches
fixed points that attract it, so the search reports whatever it finds and
classifies each solution by slice membership rather than promising three.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import GridFunction, sup_norm
from .cone import ConeSpec, LWParams, sample_cone_member, window_min
from .errors import SamplerExhausted
from .operators import (DelaySpec, QuasilinearSpec, ThermistorSpec,
                        apply_delay, apply_quasilinear, apply_thermistor)
from .timescale import TimeScale

__all__ = [
    "SolverConfig",
    "SolveResult",
    "SolutionSet",
    "operator_for",
    "fixed_point_residual",
    "picard",
    "classify_solution",
    "find_three",
]


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-10
    max_iter: int = 10_000
    theta_init: float = 1.0
    theta_min: float = 1.0 / 64.0
    stall_window: int = 10
    blowup: float = 1e12

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if not (0.0 < self.theta_min <= self.theta_init <= 1.0):
            raise ValueError("need 0 < theta_min <= theta_init <= 1")


@dataclass
class SolveResult:
    u: GridFunction
    residual: float
    iterations: int
    status: str
    theta_final: float
    residual_history: list = field(repr=False, default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status == "converged"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "residual": self.residual,
            "iterations": self.iterations,
            "theta_final": self.theta_final,
            "sup_norm": sup_norm(self.u),
        }


def operator_for(spec):
    """Bind a problem spec to its integral operator as u -> op(u)."""
    if isinstance(spec, ThermistorSpec):
        return lambda u: apply_thermistor(spec, u)
    if isinstance(spec, QuasilinearSpec):
        return lambda u: apply_quasilinear(spec, u)
    if isinstance(spec, DelaySpec):
        return lambda u: apply_delay(spec, u)
    raise TypeError(f"no operator for spec of type {type(spec).__name__}")


def fixed_point_residual(op, u: GridFunction) -> float:
    return float(np.max(np.abs(op(u).values - u.values)))


def picard(op, u0: GridFunction, config: SolverConfig | None = None) -> SolveResult:
    """Damped Picard iteration from u0.

    Statuses: "converged" (residual below tol), "diverged" (non-finite or
    past the blowup bound), "oscillating" (residual refuses to decrease
    even at the smallest damping), "max_iter".
    """
    cfg = config or SolverConfig()
    ts = u0.ts
    u = np.array(u0.values, dtype=float)
    theta = cfg.theta_init
    history: list[float] = []
    stall = 0
    status = "max_iter"
    res = float("inf")
    for _ in range(cfg.max_iter):
        v = op(GridFunction(ts, u)).values
        res = float(np.max(np.abs(v - u)))
        history.append(res)
        if not np.isfinite(res) or res > cfg.blowup:
            status = "diverged"
            break
        if res < cfg.tol:
            status = "converged"
            u = np.asarray(v, dtype=float)
            break
        if len(history) > 1 and res >= history[-2]:
            stall += 1
        else:
            stall = 0
        if stall >= cfg.stall_window:
            stall = 0
            theta *= 0.5
            if theta < cfg.theta_min:
                status = "oscillating"
                break
        u = (1.0 - theta) * u + theta * np.asarray(v, dtype=float)
    return SolveResult(u=GridFunction(ts, u), residual=res,
                       iterations=len(history), status=status,
                       theta_final=theta, residual_history=history)


def classify_solution(u: GridFunction, lw: LWParams, cone: ConeSpec) -> str:
    """Slice membership label for a fixed point.

    "small": below the inner radius.  "window": window minimum above b.
    "intermediate": past the inner radius but with window minimum under b.
    """
    norm = sup_norm(u)
    alpha = window_min(u, cone.xi)
    if norm < lw.a:
        return "small"
    if alpha > lw.b:
        return "window"
    if norm > lw.a and alpha < lw.b:
        return "intermediate"
    return "boundary"


@dataclass
class SolutionSet:
    solutions: list
    labels: list
    starts: int

    @property
    def distinct(self) -> int:
        return len(self.solutions)

    def to_dict(self) -> dict:
        return {
            "starts": self.starts,
            "distinct": self.distinct,
            "solutions": [
                dict(res.to_dict(), label=lab)
                for res, lab in zip(self.solutions, self.labels)
            ],
        }


def _search_starts(ts: TimeScale, lw: LWParams, cone: ConeSpec,
                   rng: np.random.Generator, per_region: int):
    """Constant profiles in each slice plus random cone members."""
    ones = np.ones(len(ts.grid))
    starts = [
        GridFunction(ts, 0.5 * lw.a * ones),
        GridFunction(ts, 0.5 * (lw.b + lw.d) * ones),
        GridFunction(ts, 0.5 * (lw.a + lw.b) * ones),
    ]
    ranges = [(0.25 * lw.a, lw.a), (lw.b, lw.d), (lw.a, lw.b)]
    for lo, hi in ranges:
        for _ in range(per_region):
            try:
                starts.append(sample_cone_member(ts, cone, rng,
                                                 norm_range=(lo, hi)))
            except SamplerExhausted:
                continue
    return starts


def find_three(spec, lw: LWParams, cone: ConeSpec,
               config: SolverConfig | None = None, seed: int = 0,
               per_region: int = 3) -> SolutionSet:
    """Multi-start search for distinct fixed points of the operator.

    Convergent runs are deduplicated by sup distance; each survivor gets a
    slice label.  The search stops early once all three target labels are
    covered.
    """
    cfg = config or SolverConfig()
    op = operator_for(spec)
    ts = spec.ts
    rng = np.random.default_rng(seed)
    starts = _search_starts(ts, lw, cone, rng, per_region)

    found: list[SolveResult] = []
    labels: list[str] = []
    used = 0
    for u0 in starts:
        used += 1
        result = picard(op, u0, cfg)
        if not result.converged:
            continue
        if any(float(np.max(np.abs(result.u.values - got.u.values)))
               < 100.0 * cfg.tol for got in found):
            continue
        found.append(result)
        labels.append(classify_solution(result.u, lw, cone))
        if {"small", "window", "intermediate"} <= set(labels):
            break
    return SolutionSet(solutions=found, labels=labels, starts=used)
