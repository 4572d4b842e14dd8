"""Deterministic serialization of reports and solution traces.

The JSON writer formats every float with 17 significant digits and keeps
dict insertion order, so the same report content produces byte identical
files on every run and platform.  Reports carry no timestamps or absolute
paths for the same reason.  Non-finite floats, which standard JSON cannot
represent, are written as the strings "nan", "inf" and "-inf".
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .calculus import GridFunction

__all__ = ["format_float", "dumps", "write_json", "write_solution_csv"]


def format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.17g" % x


def _serialize(obj, out: list) -> None:
    if obj is None or obj is True or obj is False:
        out.append("null" if obj is None else "true" if obj is True else "false")
    elif isinstance(obj, (np.floating, float)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, (np.integer, int)):
        out.append(str(int(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if not isinstance(k, str):
                raise TypeError(f"report keys must be strings, got {k!r}")
            if i:
                out.append(", ")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(": ")
            _serialize(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        out.append("[")
        for i, v in enumerate(seq):
            if i:
                out.append(", ")
            _serialize(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def dumps(obj) -> str:
    out: list = []
    _serialize(obj, out)
    return "".join(out)


def write_json(path: str, obj) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))
        fh.write("\n")
    return path


def write_solution_csv(path: str, u: GridFunction) -> str:
    """Solution trace as two columns t,u with full-precision values."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,u\n")
        for t, v in zip(u.ts.grid, u.values):
            fh.write("%.17g,%.17g\n" % (t, v))
    return path
