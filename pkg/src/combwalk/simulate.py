"""Monte Carlo sampling of the simple random walk on the 2-dimensional comb.

Random numbers
--------------
Each walk owns an independent SplitMix64 stream.  Its key is
``mix64(mix64(seed ^ SALT) + GAMMA * (index + 1))`` and its ``t``-th output
is ``mix64(key + GAMMA * (t + 1))``, where ``mix64`` is the SplitMix64
finaliser (Stafford variant 13) and ``GAMMA`` the golden-ratio increment.
A walk's path depends only on ``(seed, index)``, so results do not depend
on thread count or on how walks are split into chunks.

Random bits are consumed directly: a step on the axis uses two bits (four
equally likely moves), a step on a tooth uses one.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

import numba
import numpy as np

__all__ = [
    "FIELDS",
    "QUANTITIES",
    "Estimate",
    "PathSummary",
    "WalkBatch",
    "WalkConfig",
    "walk_key",
    "run_walk",
    "trace_walk",
    "simulate_walks",
    "estimate_quantity",
    "exit_time_sample",
    "exit_time_samples",
    "exit_time_estimate",
    "set_threads",
]

FIELDS = (
    "final_x",
    "final_y",
    "dev_x",
    "dev_y",
    "span_x",
    "span_y",
    "loops",
    "max_norm1",
    "max_norm_inf",
)
_F = {name: i for i, name in enumerate(FIELDS)}

QUANTITIES = ("abs_x", "abs_y", "dev_x", "dev_y", "span_x", "span_y", "norm1", "norm_inf", "loops")

EXIT_TIME_CAP = 10**9

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SALT = np.uint64(0x5851F42D4C957F2D)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_THREE = np.uint64(3)


def set_threads(n: int | None = None) -> int:
    """Set the numba thread count (defaults to ``$COMBWALK_THREADS``)."""
    if n is None:
        env = os.environ.get("COMBWALK_THREADS")
        if not env:
            return numba.get_num_threads()
        n = int(env)
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


@numba.njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@numba.njit
def _key(seed, index):
    return _mix64(_mix64(seed ^ _SALT) + _GAMMA * (index + _ONE))


def walk_key(seed: int, index: int) -> int:
    """Stream key of walk ``index`` under ``seed`` (both taken modulo 2**64)."""
    return int(_key(np.uint64(seed % 2**64), np.uint64(index % 2**64)))


@numba.njit
def _walk_into(key, times, out):
    """Run one walk to ``times[-1]`` steps, writing stats at each time into ``out[t, :]``."""
    ctr = np.uint64(0)
    bits = np.uint64(0)
    nbits = 0
    x = 0
    y = 0
    xmin = 0
    xmax = 0
    ymin = 0
    ymax = 0
    loops = 0
    m1 = 0
    minf = 0
    ti = 0
    nt = times.shape[0]
    while ti < nt and times[ti] == 0:
        for j in range(9):
            out[ti, j] = 0
        ti += 1
    step = 0
    total = times[nt - 1] if nt > 0 else 0
    while step < total:
        step += 1
        if y == 0:
            if nbits < 2:
                ctr += _ONE
                bits = _mix64(key + _GAMMA * ctr)
                nbits = 64
            r = bits & _THREE
            bits = bits >> _TWO
            nbits -= 2
            if r == 0:
                x += 1
                loops += 1
                if x > xmax:
                    xmax = x
            elif r == 1:
                x -= 1
                loops += 1
                if x < xmin:
                    xmin = x
            elif r == 2:
                y = 1
                if ymax < 1:
                    ymax = 1
            else:
                y = -1
                if ymin > -1:
                    ymin = -1
        else:
            if nbits < 1:
                ctr += _ONE
                bits = _mix64(key + _GAMMA * ctr)
                nbits = 64
            if bits & _ONE:
                y += 1
                if y > ymax:
                    ymax = y
            else:
                y -= 1
                if y < ymin:
                    ymin = y
            bits = bits >> _ONE
            nbits -= 1
        ax = x if x >= 0 else -x
        ay = y if y >= 0 else -y
        if ax + ay > m1:
            m1 = ax + ay
        big = ax if ax > ay else ay
        if big > minf:
            minf = big
        while ti < nt and times[ti] == step:
            out[ti, 0] = x
            out[ti, 1] = y
            out[ti, 2] = xmax if xmax > -xmin else -xmin
            out[ti, 3] = ymax if ymax > -ymin else -ymin
            out[ti, 4] = xmax - xmin
            out[ti, 5] = ymax - ymin
            out[ti, 6] = loops
            out[ti, 7] = m1
            out[ti, 8] = minf
            ti += 1


@numba.njit(parallel=True)
def _walk_batch(seed, start, n_walks, times, out):
    for i in numba.prange(n_walks):
        _walk_into(_key(seed, np.uint64(start + i)), times, out[i])


@numba.njit
def _exit_time(key, radius, use_l1, cap):
    ctr = np.uint64(0)
    bits = np.uint64(0)
    nbits = 0
    x = 0
    y = 0
    t = 0
    while t < cap:
        t += 1
        if y == 0:
            if nbits < 2:
                ctr += _ONE
                bits = _mix64(key + _GAMMA * ctr)
                nbits = 64
            r = bits & _THREE
            bits = bits >> _TWO
            nbits -= 2
            if r == 0:
                x += 1
            elif r == 1:
                x -= 1
            elif r == 2:
                y = 1
            else:
                y = -1
        else:
            if nbits < 1:
                ctr += _ONE
                bits = _mix64(key + _GAMMA * ctr)
                nbits = 64
            if bits & _ONE:
                y += 1
            else:
                y -= 1
            bits = bits >> _ONE
            nbits -= 1
        ax = x if x >= 0 else -x
        ay = y if y >= 0 else -y
        if use_l1:
            if ax + ay > radius:
                return t, False
        elif ax > radius or ay > radius:
            return t, False
    return t, True


@numba.njit(parallel=True)
def _exit_batch(seed, start, n, radius, use_l1, cap, out, capped):
    for i in numba.prange(n):
        t, c = _exit_time(_key(seed, np.uint64(start + i)), radius, use_l1, cap)
        out[i] = t
        capped[i] = c


# ---------------------------------------------------------------------------
# estimators


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error (``ddof=1``)."""

    mean: float
    stderr: float
    count: int

    @classmethod
    def from_samples(cls, values) -> "Estimate":
        a = np.asarray(values, dtype=float)
        n = a.size
        if n == 0:
            raise ValueError("no samples")
        sd = float(a.std(ddof=1)) if n > 1 else 0.0
        return cls(float(a.mean()), sd / math.sqrt(n), n)

    def _m2(self) -> float:
        return self.stderr**2 * self.count * (self.count - 1)

    def merge(self, other: "Estimate") -> "Estimate":
        """Pool two independent estimates as if their samples were concatenated."""
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / n
        m2 = self._m2() + other._m2() + delta**2 * self.count * other.count / n
        se = math.sqrt(m2 / (n - 1) / n) if n > 1 else 0.0
        return Estimate(mean, se, n)

    def scaled(self, factor: float) -> "Estimate":
        return Estimate(self.mean * factor, self.stderr * abs(factor), self.count)

    def within(self, target: float, k: float = 3.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr


@dataclass(frozen=True)
class WalkConfig:
    """Monte Carlo run parameters.

    ``record_grid`` holds time fractions ``t in (0, 1]``; the walk is
    snapshotted at ``floor(n_steps * t)``.  ``checkpoints`` are extra absolute
    times at which all statistics are recorded.
    """

    n_steps: int
    n_walks: int
    seed: int = 0
    record_grid: tuple | None = None
    checkpoints: tuple | None = None

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.n_walks < 1:
            raise ValueError("n_walks must be >= 1")
        for t in self.record_grid or ():
            if not 0 < t <= 1:
                raise ValueError(f"record_grid times must lie in (0, 1], got {t}")
        for c in self.checkpoints or ():
            if not 0 <= c <= self.n_steps:
                raise ValueError(f"checkpoint {c} outside 0..{self.n_steps}")

    def times(self) -> np.ndarray:
        ts = {self.n_steps}
        ts.update(int(math.floor(self.n_steps * t)) for t in self.record_grid or ())
        ts.update(int(c) for c in self.checkpoints or ())
        return np.array(sorted(ts), dtype=np.int64)


@dataclass(frozen=True)
class PathSummary:
    final_x: int
    final_y: int
    dev_x: int
    dev_y: int
    span_x: int
    span_y: int
    loops: int
    max_norm1: int = 0
    max_norm_inf: int = 0
    snapshots: tuple | None = None


def run_walk(n_steps: int, key: int, record_grid: Sequence[float] | None = None) -> PathSummary:
    """Sample one path of ``n_steps`` from the stream ``key`` (see :func:`walk_key`).

    Snapshots are ``(x, y, loops)`` at ``floor(n_steps * t)`` for each grid
    ``t``; since a horizontal move is exactly a loop of the vertical
    projection, ``x`` equals ``X_{L_k}`` in the decomposed realization.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    ts = {n_steps}
    for t in record_grid or ():
        if not 0 < t <= 1:
            raise ValueError(f"record_grid times must lie in (0, 1], got {t}")
        ts.add(int(math.floor(n_steps * t)))
    times = np.array(sorted(ts), dtype=np.int64)
    out = np.zeros((times.size, len(FIELDS)), dtype=np.int64)
    _walk_into(np.uint64(key), times, out)
    row = out[-1]
    snaps = None
    if record_grid:
        pos = {int(t): i for i, t in enumerate(times)}
        snaps = tuple(
            tuple(int(v) for v in out[pos[int(math.floor(n_steps * t))], [0, 1, 6]]) for t in record_grid
        )
    return PathSummary(*(int(v) for v in row), snapshots=snaps)


def trace_walk(n_steps: int, key: int) -> np.ndarray:
    """Full trajectory of one walk: array of shape ``(n_steps + 1, 2)`` holding ``(x, y)``."""
    times = np.arange(n_steps + 1, dtype=np.int64)
    out = np.zeros((times.size, len(FIELDS)), dtype=np.int64)
    _walk_into(np.uint64(key), times, out)
    return out[:, :2].copy()


@dataclass
class WalkBatch:
    """Statistics of many walks: ``data[walk, time, field]`` with fields in :data:`FIELDS`."""

    config: WalkConfig
    times: np.ndarray
    data: np.ndarray
    extras: dict = field(default_factory=dict)

    def at(self, time: int | None = None) -> np.ndarray:
        t = self.config.n_steps if time is None else time
        idx = np.searchsorted(self.times, t)
        if idx >= self.times.size or self.times[idx] != t:
            raise KeyError(f"time {t} was not recorded")
        return self.data[:, idx, :]

    def field(self, name: str, time: int | None = None) -> np.ndarray:
        return self.at(time)[:, _F[name]]

    def quantity(self, quantity: str, time: int | None = None) -> np.ndarray:
        rows = self.at(time)
        x = np.abs(rows[:, 0])
        y = np.abs(rows[:, 1])
        if quantity == "abs_x":
            return x
        if quantity == "abs_y":
            return y
        if quantity == "norm1":
            return x + y
        if quantity == "norm_inf":
            return np.maximum(x, y)
        if quantity in _F:
            return rows[:, _F[quantity]]
        raise ValueError(f"unknown quantity {quantity!r}; choose from {QUANTITIES}")

    def estimate(self, quantity: str, time: int | None = None) -> Estimate:
        return Estimate.from_samples(self.quantity(quantity, time))


def simulate_walks(config: WalkConfig, *, chunk: int = 1 << 16) -> WalkBatch:
    """Run ``config.n_walks`` independent walks and collect their statistics."""
    set_threads()
    times = config.times()
    data = np.empty((config.n_walks, times.size, len(FIELDS)), dtype=np.int64)
    seed = np.uint64(config.seed % 2**64)
    for start in range(0, config.n_walks, chunk):
        stop = min(config.n_walks, start + chunk)
        _walk_batch(seed, np.uint64(start), stop - start, times, data[start:stop])
    return WalkBatch(config, times, data)


def estimate_quantity(config: WalkConfig, quantity: str) -> Estimate:
    """Mean and standard error of ``quantity`` at ``config.n_steps``."""
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    return simulate_walks(config).estimate(quantity)


def _use_l1(norm) -> bool:
    if norm in (1, "1", "l1"):
        return True
    if norm in ("inf", "∞", math.inf, "linf"):
        return False
    raise ValueError(f"norm must be 1 or 'inf', got {norm!r}")


def exit_time_sample(radius: int, norm, key: int, *, cap: int = EXIT_TIME_CAP) -> tuple[int, bool]:
    """One exit time from the closed ball; the flag is set if ``cap`` was hit first."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    t, capped = _exit_time(np.uint64(key), radius, _use_l1(norm), cap)
    return int(t), bool(capped)


def exit_time_samples(radius: int, norm, n: int, seed: int = 0, *, cap: int = EXIT_TIME_CAP):
    """Arrays ``(times, capped)`` of ``n`` independent exit times."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    set_threads()
    out = np.empty(n, dtype=np.int64)
    capped = np.empty(n, dtype=np.bool_)
    _exit_batch(np.uint64(seed % 2**64), np.uint64(0), n, radius, _use_l1(norm), cap, out, capped)
    return out, capped


def exit_time_estimate(radius: int, norm, n: int, seed: int = 0) -> Estimate:
    times, capped = exit_time_samples(radius, norm, n, seed)
    if capped.any():
        raise RuntimeError(f"{int(capped.sum())} exit-time samples hit the cap")
    return Estimate.from_samples(times)
