"""Power-law fits and the closed-form asymptotic constants.

The constants are recomputed from their closed forms on import; with IEEE
doubles and a correctly rounded ``math.gamma`` they agree across platforms
to at least 12 significant digits:

    abs_x   0.656003897...   n^(1/4)
    abs_y   0.797884560...   n^(1/2)
    dev_x   1.030448512...   n^(1/4)
    dev_y   1.253314137...   n^(1/2)
    span_x  1.312007795...   n^(1/4)
    span_y  1.595769121...   n^(1/2)
    exit_inf 1               n^2
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "PowerLawFit",
    "PaperConstant",
    "paper_constants",
    "constant",
    "fit_power_law",
    "mellin_check",
    "MELLIN_LIMIT",
]

MELLIN_LIMIT = math.pi / 4


@dataclass(frozen=True)
class PowerLawFit:
    C: float
    alpha: float
    residual: float
    n_range: tuple

    def predict(self, n) -> float:
        return self.C * n**self.alpha


@dataclass(frozen=True)
class PaperConstant:
    name: str
    closed_form: str
    value: float
    exponent: float


_G54 = math.gamma(1.25)

_TABLE = (
    ("abs_x", "1/(2^(3/4) Gamma(5/4))", lambda: 1 / (2**0.75 * _G54), 0.25),
    ("abs_y", "sqrt(2/pi)", lambda: math.sqrt(2 / math.pi), 0.5),
    ("dev_x", "2^(-7/4) pi / Gamma(5/4)", lambda: 2**-1.75 * math.pi / _G54, 0.25),
    ("dev_y", "sqrt(pi/2)", lambda: math.sqrt(math.pi / 2), 0.5),
    ("span_x", "2^(1/4) / Gamma(5/4)", lambda: 2**0.25 / _G54, 0.25),
    ("span_y", "sqrt(8/pi)", lambda: math.sqrt(8 / math.pi), 0.5),
    ("exit_inf", "1", lambda: 1.0, 2.0),
)


def paper_constants() -> list[PaperConstant]:
    """Leading constants ``C`` in ``E[...] ~ C n^alpha`` for every studied statistic."""
    return [PaperConstant(name, form, f(), a) for name, form, f, a in _TABLE]


def constant(name: str) -> PaperConstant:
    for c in paper_constants():
        if c.name == name:
            return c
    raise KeyError(name)


def fit_power_law(points: Iterable[tuple[float, float]]) -> PowerLawFit:
    """Least-squares line through ``(log n, log value)``."""
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    n = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.any(n <= 0) or np.any(y <= 0):
        raise ValueError("power-law fit needs positive n and values")
    ln, ly = np.log(n), np.log(y)
    if np.ptp(ln) == 0:
        raise ValueError("need at least two distinct n")
    slope, intercept = np.polyfit(ln, ly, 1)
    res = ly - (slope * ln + intercept)
    rms = float(np.sqrt(np.mean(res**2)))
    return PowerLawFit(float(math.exp(intercept)), float(slope), rms, (float(n.min()), float(n.max())))


def mellin_check(v: float, variant: str = "plain") -> float:
    """``(1 - v) * sum_{h>=1} v^h / (1 + v^(2h + s))`` with ``s = 0`` (plain) or ``1`` (shifted).

    Tends to pi/4 as v -> 1.  Summation stops once terms fall below 1e-18.
    """
    if not 0 < v < 1:
        raise ValueError("v must lie in (0, 1)")
    if variant not in ("plain", "shifted"):
        raise ValueError("variant must be 'plain' or 'shifted'")
    s = 0 if variant == "plain" else 1
    # v^h < 1e-18 bounds every later term
    h_max = int(math.ceil(math.log(1e-18) / math.log(v))) + 1
    h = np.arange(1, h_max + 1, dtype=float)
    vh = np.exp(h * math.log(v))
    terms = vh / (1.0 + vh * vh * v**s)
    return (1.0 - v) * math.fsum(terms[::-1])
