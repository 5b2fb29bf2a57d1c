"""Rescaled comb paths and Kolmogorov-Smirnov checks of their limit laws.

At time ``nt`` the walk is reported as
``(X_{L_nt} / n^(1/4), Y_nt / n^(1/2), L_nt / n^(1/2))``.  The limits are a
Brownian motion run at the local time of an independent one for the first
coordinate, a Brownian motion for the second, and ``|N(0,1)|`` for the
loop count at ``t = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .simulate import Estimate, WalkConfig, simulate_walks

__all__ = [
    "RescaledSnapshot",
    "SnapshotArrays",
    "KSResult",
    "sample_snapshots",
    "sample_snapshot_arrays",
    "reference_abs_normal",
    "reference_normal",
    "reference_brownian_at_local_time",
    "ks_two_sample",
    "ks_against",
    "sign_correlation",
    "MIN_KS_SAMPLES",
]

MIN_KS_SAMPLES = 100


@dataclass(frozen=True)
class RescaledSnapshot:
    t: float
    x_scaled: float
    y_scaled: float
    loops_scaled: float


@dataclass(frozen=True)
class SnapshotArrays:
    """Columns of rescaled snapshots, each of shape ``(n_walks, len(grid))``."""

    n: int
    grid: tuple
    x_scaled: np.ndarray
    y_scaled: np.ndarray
    loops_scaled: np.ndarray

    def column(self, name: str, t: float = 1.0) -> np.ndarray:
        return getattr(self, name)[:, self.grid.index(t)]


@dataclass(frozen=True)
class KSResult:
    statistic: float
    n_samples: int
    reference: str
    pvalue: float = float("nan")


def _check_grid(grid: Sequence[float]) -> tuple:
    g = tuple(float(t) for t in grid)
    if not g:
        raise ValueError("empty time grid")
    for t in g:
        if not 0 < t <= 1:
            raise ValueError(f"grid times must lie in (0, 1], got {t}")
    return g


def sample_snapshot_arrays(n: int, n_walks: int, grid: Sequence[float] = (1.0,), seed: int = 0) -> SnapshotArrays:
    if n < 1:
        raise ValueError("n must be >= 1")
    g = _check_grid(grid)
    batch = simulate_walks(WalkConfig(n, n_walks, seed, record_grid=g))
    cols = [batch.at(int(math.floor(n * t))) for t in g]
    x = np.stack([c[:, 0] for c in cols], axis=1) / n**0.25
    y = np.stack([c[:, 1] for c in cols], axis=1) / n**0.5
    loops = np.stack([c[:, 6] for c in cols], axis=1) / n**0.5
    return SnapshotArrays(n, g, x, y, loops)


def sample_snapshots(n: int, n_walks: int, grid: Sequence[float] = (1.0,), seed: int = 0) -> list[list[RescaledSnapshot]]:
    """Per walk, one :class:`RescaledSnapshot` at ``floor(n t)`` for each grid time."""
    a = sample_snapshot_arrays(n, n_walks, grid, seed)
    return [
        [RescaledSnapshot(t, float(a.x_scaled[i, j]), float(a.y_scaled[i, j]), float(a.loops_scaled[i, j]))
         for j, t in enumerate(a.grid)]
        for i in range(n_walks)
    ]


# reference laws ------------------------------------------------------------


def reference_abs_normal(rng: np.random.Generator, size=None):
    return np.abs(rng.standard_normal(size))


def reference_normal(rng: np.random.Generator, size=None):
    return rng.standard_normal(size)


def reference_brownian_at_local_time(rng: np.random.Generator, size=None, *, method: str = "fast", steps: int = 2000):
    """Draws of ``W`` evaluated at the local time at 0 of an independent Brownian motion, at time 1.

    ``fast`` uses ``L ~ |N(0,1)|`` and returns ``sqrt(L) * Z``.  ``path``
    approximates both motions by simple random walks of ``steps`` steps,
    taking ``L`` as the visit count at 0 over ``sqrt(steps)``; it is slow and
    exists to cross-check the fast sampler.
    """
    if method == "fast":
        loc = np.abs(rng.standard_normal(size))
        return np.sqrt(loc) * rng.standard_normal(size)
    if method != "path":
        raise ValueError("method must be 'fast' or 'path'")
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    m = int(np.prod(shape)) if shape else 1
    visits = np.empty(m, dtype=np.int64)
    chunk = max(1, 2_000_000 // steps)
    for s in range(0, m, chunk):
        k = min(m, s + chunk) - s
        walk = np.cumsum(rng.choice(np.array([-1, 1], dtype=np.int8), size=(k, steps)), axis=1, dtype=np.int32)
        visits[s:s + k] = 1 + np.count_nonzero(walk == 0, axis=1)
    loc = visits / math.sqrt(steps)
    # W at time L: a simple random walk of round(L * steps) steps, rescaled
    k = np.rint(loc * steps).astype(np.int64)
    w = (2 * rng.binomial(k, 0.5) - k) / math.sqrt(steps)
    return w.reshape(shape) if shape else float(w[0])


# KS tests ------------------------------------------------------------------


def _samples(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float).ravel()
    if arr.size < MIN_KS_SAMPLES:
        raise ValueError(f"KS test needs at least {MIN_KS_SAMPLES} samples, got {arr.size}")
    return arr


def ks_two_sample(a, b) -> KSResult:
    x, y = _samples(a), _samples(b)
    r = stats.ks_2samp(x, y)
    return KSResult(float(r.statistic), min(x.size, y.size), "two-sample", float(r.pvalue))


_CDFS = {"normal": stats.norm.cdf, "abs_normal": stats.halfnorm.cdf}


def ks_against(a, reference_cdf: str) -> KSResult:
    """One-sample KS distance to ``normal`` (N(0,1)) or ``abs_normal`` (|N(0,1)|)."""
    if reference_cdf not in _CDFS:
        raise ValueError(f"reference must be one of {sorted(_CDFS)}")
    x = _samples(a)
    r = stats.kstest(x, _CDFS[reference_cdf])
    return KSResult(float(r.statistic), x.size, reference_cdf, float(r.pvalue))


def sign_correlation(x, y) -> Estimate:
    """Mean of ``sign(x) * sign(y)`` with its standard error."""
    return Estimate.from_samples(np.sign(np.asarray(x)) * np.sign(np.asarray(y)))
