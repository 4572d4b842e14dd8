"""The one-dimensional p-Laplacian map and its inverse.

phi(s, p) = |s|^(p-2) * s for s != 0 and phi(0, p) = 0.  The inverse is
phi(., q) with the conjugate exponent q = p / (p - 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidExponent

__all__ = ["PExponent", "phi", "phi_inverse", "conjugate_exponent"]


def _check_exponent(p: float) -> None:
    if not (np.isfinite(p) and p > 1.0):
        raise InvalidExponent(f"exponent must be a finite real > 1, got {p!r}")


def conjugate_exponent(p: float) -> float:
    """Holder conjugate q = p / (p - 1)."""
    _check_exponent(p)
    return p / (p - 1.0)


@dataclass(frozen=True)
class PExponent:
    """Exponent pair (p, q) with 1/p + 1/q = 1."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", conjugate_exponent(self.p))


def phi(s, p: float):
    """Apply the p-Laplacian map.

    Computed as sign(s) * |s|**(p - 1), which equals |s|^(p-2) * s and stays
    finite at s = 0 for every admissible p (the textbook form would produce
    0 * inf there when p < 2).  Accepts scalars or arrays.
    """
    _check_exponent(p)
    arr = np.asarray(s, dtype=float)
    out = np.sign(arr) * np.abs(arr) ** (p - 1.0)
    return float(out) if out.ndim == 0 else out


def phi_inverse(s, p: float):
    """Apply the inverse map phi(., q) with q conjugate to p."""
    return phi(s, conjugate_exponent(p))
