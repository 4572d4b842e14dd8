"""Problem configurations as JSON documents.

Top-level schema::

    {
      "name": "...",
      "problem": "thermistor" | "quasilinear" | "delay",
      "timescale": {"segments": [...], "hmax": null, "eps_merge": 1e-12},
      "p": 1.5,
      "lw": {"a": ..., "b": ..., "c": ..., "d": ...},
      "xi": 0.25,
      ... problem fields ...
      "reference_values": {...}        # free-form, copied into reports
    }

Segments are one of ``{"interval": [lo, hi]}``, ``{"points": [...]}`` or
``{"geometric": {"limit": L, "ratio": r, "start": s}}``.  Piecewise
polynomial functions are ``{"bp": [b0, ..., bk], "poly": [[c0, c1, ...],
...], "extrapolation": "clamp"}`` with one coefficient list per interval,
coefficients in the global variable, lowest degree first.

Problem fields: thermistor needs f, lambda, beta, eta; quasilinear needs
f, h, eta; delay needs f2 = {"c1", "c2", "g"}, a, omega, psi, b0, delta,
gamma, lambda, r, a "history" time scale, and optional "sampling" =
{"x_small", "x_large"} ranges for the limit checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cone import ConeSpec
from .errors import ConfigParseError
from .operators import (BivariateComposite, DelaySpec, QuasilinearSpec,
                        ThermistorSpec)
from .piecewise import PiecewiseFunction
from .timescale import (ContinuousInterval, DiscretePoints, GeometricFamily,
                        TimeScale, build_timescale)

__all__ = [
    "ProblemSetup",
    "parse_segment",
    "parse_timescale",
    "parse_piecewise",
    "build_problem",
    "load_problem",
    "apply_overrides",
]

_SCALARS = {
    "thermistor": ("lambda", "beta", "eta", "p"),
    "quasilinear": ("eta", "p"),
    "delay": ("delta", "gamma", "lambda", "r", "p"),
}


def _get(cfg: dict, key: str, where: str):
    if key not in cfg:
        raise ConfigParseError(f"missing key {key!r} in {where}")
    return cfg[key]


def _num(cfg: dict, key: str, where: str) -> float:
    v = _get(cfg, key, where)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigParseError(f"{where}.{key} must be a number, got {v!r}")
    return float(v)


def parse_segment(seg: dict, where: str = "segments"):
    if not isinstance(seg, dict) or len(seg) != 1:
        raise ConfigParseError(
            f"each entry of {where} must be a single-key object, got {seg!r}")
    kind, body = next(iter(seg.items()))
    if kind == "interval":
        if not (isinstance(body, (list, tuple)) and len(body) == 2):
            raise ConfigParseError(f"{where}.interval must be [lo, hi]")
        return ContinuousInterval(float(body[0]), float(body[1]))
    if kind == "points":
        if not isinstance(body, (list, tuple)) or not body:
            raise ConfigParseError(f"{where}.points must be a nonempty list")
        return DiscretePoints(tuple(float(x) for x in body))
    if kind == "geometric":
        if not isinstance(body, dict):
            raise ConfigParseError(f"{where}.geometric must be an object")
        return GeometricFamily(limit=_num(body, "limit", f"{where}.geometric"),
                               ratio=_num(body, "ratio", f"{where}.geometric"),
                               start=_num(body, "start", f"{where}.geometric"))
    raise ConfigParseError(f"unknown segment kind {kind!r} in {where}")


def parse_timescale(cfg: dict, where: str = "timescale",
                    hmax: float | None = None) -> TimeScale:
    if not isinstance(cfg, dict):
        raise ConfigParseError(f"{where} must be an object")
    raw = _get(cfg, "segments", where)
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigParseError(f"{where}.segments must be a nonempty list")
    segments = [parse_segment(s, f"{where}.segments") for s in raw]
    eff_hmax = hmax if hmax is not None else cfg.get("hmax")
    kwargs = {}
    if eff_hmax is not None:
        kwargs["hmax"] = float(eff_hmax)
    if cfg.get("eps_merge") is not None:
        kwargs["eps_merge"] = float(cfg["eps_merge"])
    try:
        return build_timescale(segments, **kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigParseError(f"{where}: {exc}") from exc


def parse_piecewise(cfg: dict, where: str) -> PiecewiseFunction:
    if not isinstance(cfg, dict):
        raise ConfigParseError(f"{where} must be an object with bp/poly")
    bp = _get(cfg, "bp", where)
    poly = _get(cfg, "poly", where)
    if not isinstance(bp, (list, tuple)) or len(bp) < 2:
        raise ConfigParseError(f"{where}.bp needs at least two breakpoints")
    if not isinstance(poly, (list, tuple)) or len(poly) != len(bp) - 1:
        raise ConfigParseError(
            f"{where}.poly must hold {len(bp) - 1} coefficient lists")
    try:
        return PiecewiseFunction.from_config(
            {"bp": list(bp), "poly": [list(p) for p in poly],
             "extrapolation": cfg.get("extrapolation", "clamp")})
    except (ValueError, TypeError) as exc:
        raise ConfigParseError(f"{where}: {exc}") from exc


def _parse_bivariate(cfg: dict, where: str) -> BivariateComposite:
    if not isinstance(cfg, dict):
        raise ConfigParseError(f"{where} must be an object with c1/c2/g")
    return BivariateComposite(c1=_num(cfg, "c1", where),
                              c2=_num(cfg, "c2", where),
                              g=parse_piecewise(_get(cfg, "g", where),
                                                f"{where}.g"))


@dataclass
class ProblemSetup:
    """A fully built problem plus its slice constants and report extras."""

    name: str
    problem: str
    spec: object
    a: float
    b: float
    c: float
    d: float
    xi: float
    x_small: float = 1e-4
    x_large: float = 1e4
    reference_values: dict = field(default_factory=dict)

    @property
    def lw_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def cone_spec(self) -> ConeSpec:
        mono = "decreasing" if self.problem == "thermistor" else "increasing"
        return ConeSpec(monotonicity=mono, xi=self.xi)


def apply_overrides(cfg: dict, overrides: dict) -> dict:
    """Apply ``key=value`` overrides to a raw config dict.

    Slice constants a, b, c, d target the lw block; xi, x_small, x_large
    and the problem's own scalars target the top level.
    """
    out = json.loads(json.dumps(cfg))
    problem = out.get("problem")
    scalars = set(_SCALARS.get(problem, ())) | {"xi"}
    for key, value in overrides.items():
        if key in ("a", "b", "c", "d"):
            out.setdefault("lw", {})[key] = float(value)
        elif key in scalars:
            out[key] = float(value)
        elif key in ("x_small", "x_large"):
            out.setdefault("sampling", {})[key] = float(value)
        else:
            raise ConfigParseError(
                f"unknown override {key!r} for problem {problem!r}")
    return out


def build_problem(cfg: dict, hmax: float | None = None) -> ProblemSetup:
    if not isinstance(cfg, dict):
        raise ConfigParseError("problem config must be a JSON object")
    problem = _get(cfg, "problem", "config")
    if problem not in _SCALARS:
        raise ConfigParseError(
            f"problem must be one of {sorted(_SCALARS)}, got {problem!r}")
    name = cfg.get("name", problem)
    ts = parse_timescale(_get(cfg, "timescale", "config"), "timescale", hmax)

    lw = _get(cfg, "lw", "config")
    a, b = _num(lw, "a", "lw"), _num(lw, "b", "lw")
    c, d = _num(lw, "c", "lw"), _num(lw, "d", "lw")
    xi = _num(cfg, "xi", "config")
    p = _num(cfg, "p", "config")

    try:
        if problem == "thermistor":
            spec = ThermistorSpec(ts=ts, f=parse_piecewise(_get(cfg, "f", "config"), "f"),
                                  lam=_num(cfg, "lambda", "config"),
                                  beta=_num(cfg, "beta", "config"),
                                  eta=_num(cfg, "eta", "config"), p=p)
        elif problem == "quasilinear":
            spec = QuasilinearSpec(ts=ts, f=parse_piecewise(_get(cfg, "f", "config"), "f"),
                                   h=parse_piecewise(_get(cfg, "h", "config"), "h"),
                                   eta=_num(cfg, "eta", "config"), p=p)
        else:
            history = parse_timescale(_get(cfg, "history", "config"),
                                      "history", hmax)
            spec = DelaySpec(ts=ts, history_ts=history,
                             f2=_parse_bivariate(_get(cfg, "f2", "config"), "f2"),
                             a=parse_piecewise(_get(cfg, "a", "config"), "a"),
                             omega=parse_piecewise(_get(cfg, "omega", "config"), "omega"),
                             psi=parse_piecewise(_get(cfg, "psi", "config"), "psi"),
                             b0=parse_piecewise(_get(cfg, "b0", "config"), "b0"),
                             delta=_num(cfg, "delta", "config"),
                             gam=_num(cfg, "gamma", "config"),
                             lam=_num(cfg, "lambda", "config"),
                             r=_num(cfg, "r", "config"), p=p)
    except (ValueError, TypeError) as exc:
        raise ConfigParseError(f"invalid {problem} data: {exc}") from exc

    sampling = cfg.get("sampling", {})
    refs = cfg.get("reference_values", {})
    if not isinstance(refs, dict):
        raise ConfigParseError("reference_values must be an object")
    return ProblemSetup(name=name, problem=problem, spec=spec, a=a, b=b,
                        c=c, d=d, xi=xi,
                        x_small=float(sampling.get("x_small", 1e-4)),
                        x_large=float(sampling.get("x_large", 1e4)),
                        reference_values=dict(refs))


def load_problem(path, hmax: float | None = None,
                 overrides: dict | None = None) -> ProblemSetup:
    """Read a problem config from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON in {path}: {exc}") from exc
    if overrides:
        cfg = apply_overrides(cfg, overrides)
    return build_problem(cfg, hmax=hmax)
