"""Bundled example problems, one per problem family.

Each preset is a plain JSON-able config dict built through the same parser
as user-supplied files, so the presets double as schema documentation.
``reference_values`` carries the closed-form constants each example is
known to produce; reports copy it verbatim so a reader can compare
computed against expected side by side.
"""

from __future__ import annotations

import math

from .config import ProblemSetup, apply_overrides, build_problem
from .errors import ConfigParseError

__all__ = ["PRESET_NAMES", "preset_config", "build_preset"]

_SQRT2 = math.sqrt(2.0)

PRESET_NAMES = ("example1", "example2", "example3")


def _example1() -> dict:
    # the quarter point is named by the boundary conditions, so it is
    # adjoined to the dyadic scale explicitly
    return {
        "name": "example1",
        "problem": "thermistor",
        "timescale": {
            "segments": [
                {"geometric": {"limit": 1.0, "ratio": 0.5, "start": 0.0}},
                {"points": [0.25]},
            ],
        },
        "p": 1.5,
        "lambda": 1.0,
        "beta": 0.5,
        "eta": 0.25,
        "f": {
            "bp": [0.0, 1.0, 1.5, 10.0, 16.0],
            "poly": [
                [2.0 * _SQRT2],
                [2.0 * _SQRT2 - 4.0, 4.0],
                [2.0 + 2.0 * _SQRT2],
                [2.0 * _SQRT2 - 18.0, 2.0],
            ],
        },
        "lw": {"a": 0.5, "b": 1.5, "c": 8.0, "d": 10.0},
        "xi": 0.25,
        "reference_values": {
            "zeta": 2.0,
            "B1_literal": 1.0 / (2.0 * (2.0 + _SQRT2)),
            "min_f_inner": 2.0 * _SQRT2,
            "inner_bound": 2.0 * _SQRT2,
            "outer_bound": 1.0 / _SQRT2,
            "min_f_window": 2.0 + 2.0 * _SQRT2,
        },
    }


def _example2() -> dict:
    return {
        "name": "example2",
        "problem": "quasilinear",
        "timescale": {
            "segments": [
                {"geometric": {"limit": 1.0, "ratio": 0.5, "start": 0.0}},
            ],
        },
        "p": 1.5,
        "eta": 0.5,
        "f": {
            "bp": [0.0, 0.5, 1.5, 25.0],
            "poly": [
                [0.5 * _SQRT2],
                [0.5 * _SQRT2 - 2.0, 4.0],
                [4.0 + 0.5 * _SQRT2],
            ],
        },
        "h": {"bp": [0.0, 1.0], "poly": [[0.0]]},
        "lw": {"a": 0.5, "b": 1.5, "c": 25.0, "d": 3.0},
        "xi": 0.25,
        "reference_values": {
            "gamma": 2.0,
            "A": 1.0,
            "B": 0.5 * _SQRT2,
            "alpha_aux": 1.0,
            "max_f_full": 4.0 + 0.5 * _SQRT2,
            "window_bound": math.sqrt(1.5 * 0.5 * _SQRT2),
        },
    }


def _example3() -> dict:
    return {
        "name": "example3",
        "problem": "delay",
        "timescale": {
            "segments": [
                {"geometric": {"limit": 0.0, "ratio": 0.5, "start": 1.0}},
                {"points": [0.75]},
            ],
        },
        "history": {
            "segments": [
                {"interval": [-0.75, -0.25]},
                {"points": [0.0]},
            ],
        },
        "p": 1.5,
        "lambda": 1.0,
        "delta": 1.0,
        "gamma": 1.0,
        "r": 0.75,
        "f2": {"c1": 1.0, "c2": 1.0,
               "g": {"bp": [0.0, 1.0e9], "poly": [[0.0, 0.0, 1.0]]}},
        "a": {"bp": [0.0, 1.0], "poly": [[1.0]]},
        "omega": {"bp": [0.0, 1.0], "poly": [[-0.75, 1.0]]},
        "psi": {"bp": [-0.75, 0.0], "poly": [[0.0]]},
        "b0": {"bp": [0.0, 1.0e6], "poly": [[0.0, 1.0]]},
        "lw": {"a": 0.25, "b": 0.5, "c": 4.0, "d": 2.0},
        "xi": 0.25,
        "sampling": {"x_small": 1e-4, "x_large": 1e4},
        "reference_values": {
            "l": 0.5,
            "m": 1.0,
            "deviation_sign_change": 0.75,
        },
    }


_FACTORIES = {
    "example1": _example1,
    "example2": _example2,
    "example3": _example3,
}


def preset_config(name: str) -> dict:
    """A fresh config dict for the named preset."""
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise ConfigParseError(
            f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}"
        ) from None


def build_preset(name: str, hmax: float | None = None,
                 overrides: dict | None = None) -> ProblemSetup:
    cfg = preset_config(name)
    if overrides:
        cfg = apply_overrides(cfg, overrides)
    return build_problem(cfg, hmax=hmax)
