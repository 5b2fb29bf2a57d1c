"""Exact ground truth for the simple random walk on the 2-dimensional comb.

Everything in this module is computed by brute-force dynamic programming over
the comb's transition kernel, never through generating functions, so it can
be used to check :mod:`combwalk.genfun` independently.

The kernel: from a vertex on the x-axis the walk moves to each of its four
neighbours with probability 1/4; from any other vertex it moves up or down
with probability 1/2.  After ``t`` steps every probability is a multiple of
``4**-t``, so the DP works on integer weights scaled by ``4**t`` and only
converts to :class:`~fractions.Fraction` at the end.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, NamedTuple

import numpy as np

__all__ = [
    "CombVertex",
    "StateDistribution",
    "BarrierSpec",
    "Expectations",
    "neighbours",
    "step",
    "position_distribution",
    "transition_probability",
    "survival_distribution",
    "survival_probability",
    "survival_curve",
    "expectations",
    "deviation_expectation",
    "span_expectation",
    "exit_time_expectation",
    "exit_time_tails",
    "path_counts_1d",
    "float_sequences",
]

EXACT_MAX_STEPS = 60
EXACT_MAX_RADIUS = 25


class CombVertex(NamedTuple):
    x: int
    y: int


def neighbours(v: tuple[int, int]) -> list[tuple[CombVertex, Fraction]]:
    """One-step transitions out of ``v`` with their probabilities."""
    x, y = v
    if y == 0:
        q = Fraction(1, 4)
        return [
            (CombVertex(x + 1, 0), q),
            (CombVertex(x - 1, 0), q),
            (CombVertex(x, 1), q),
            (CombVertex(x, -1), q),
        ]
    h = Fraction(1, 2)
    return [(CombVertex(x, y + 1), h), (CombVertex(x, y - 1), h)]


@dataclass(frozen=True)
class StateDistribution:
    """Exact (sub-)probability mass on comb vertices after ``step`` steps."""

    mass: Mapping[CombVertex, Fraction]
    step: int = 0

    @classmethod
    def point(cls, v: tuple[int, int] = (0, 0)) -> "StateDistribution":
        return cls({CombVertex(*v): Fraction(1)}, 0)

    def total(self) -> Fraction:
        return sum(self.mass.values(), Fraction(0))

    def __getitem__(self, v) -> Fraction:
        return self.mass.get(CombVertex(*v), Fraction(0))


@dataclass(frozen=True)
class BarrierSpec:
    """Closed allowed region ``x_min <= x <= x_max``, ``y_min <= y <= y_max``.

    ``None`` means unbounded on that side.  ``l1_radius`` additionally
    restricts to ``|x| + |y| <= l1_radius``.
    """

    x_min: int | None = None
    x_max: int | None = None
    y_min: int | None = None
    y_max: int | None = None
    l1_radius: int | None = None

    def __post_init__(self):
        if not self.contains(0, 0):
            raise ValueError(f"origin is outside the barrier region {self}")

    @classmethod
    def deviation(cls, axis: str, h: int) -> "BarrierSpec":
        """Region of the event ``D_n <= h`` along ``axis``."""
        if axis == "x":
            return cls(x_min=-h, x_max=h)
        if axis == "y":
            return cls(y_min=-h, y_max=h)
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")

    @classmethod
    def one_sided(cls, axis: str, h: int) -> "BarrierSpec":
        """Region of the event ``max_i S_i <= h`` along ``axis``."""
        if axis == "x":
            return cls(x_max=h)
        if axis == "y":
            return cls(y_max=h)
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")

    @classmethod
    def ball(cls, radius: int, norm) -> "BarrierSpec":
        norm = _norm_key(norm)
        if norm == "inf":
            return cls(-radius, radius, -radius, radius)
        return cls(-radius, radius, -radius, radius, l1_radius=radius)

    def contains(self, x: int, y: int) -> bool:
        if self.x_min is not None and x < self.x_min:
            return False
        if self.x_max is not None and x > self.x_max:
            return False
        if self.y_min is not None and y < self.y_min:
            return False
        if self.y_max is not None and y > self.y_max:
            return False
        if self.l1_radius is not None and abs(x) + abs(y) > self.l1_radius:
            return False
        return True


def _norm_key(norm) -> str:
    if norm in (1, "1", "l1"):
        return "1"
    if norm in ("inf", "∞", math.inf, "linf"):
        return "inf"
    raise ValueError(f"norm must be 1 or 'inf', got {norm!r}")


# ---------------------------------------------------------------------------
# integer-weight DP engine


def _int_step(w: dict, allowed: Callable[[int, int], bool] | None) -> dict:
    """Advance integer weights (denominator 4**t) by one step (denominator 4**(t+1))."""
    out: dict = {}
    get = out.get
    for (x, y), m in w.items():
        if y == 0:
            targets = ((x + 1, 0), (x - 1, 0), (x, 1), (x, -1))
            mm = m
        else:
            targets = ((x, y + 1), (x, y - 1))
            mm = 2 * m
        for t in targets:
            if allowed is None or allowed(*t):
                out[t] = get(t, 0) + mm
    return out


def _evolve(n: int, barrier: BarrierSpec | None = None) -> Iterator[dict]:
    """Yield integer weights after 0, 1, ..., n steps (killed outside ``barrier``)."""
    allowed = None if barrier is None else barrier.contains
    w = {(0, 0): 1}
    yield w
    for _ in range(n):
        w = _int_step(w, allowed)
        yield w


_free_cache: list[dict] = [{(0, 0): 1}]


def _free_weights(n: int) -> dict:
    while len(_free_cache) <= n:
        _free_cache.append(_int_step(_free_cache[-1], None))
    return _free_cache[n]


def _to_distribution(w: dict, n: int) -> StateDistribution:
    d = 4**n
    return StateDistribution({CombVertex(*k): Fraction(m, d) for k, m in w.items()}, n)


def _check_exact_steps(n: int, limit: int | None):
    if n < 0:
        raise ValueError("number of steps must be >= 0")
    cap = EXACT_MAX_STEPS if limit is None else limit
    if n > cap:
        raise ValueError(f"exact DP is limited to n <= {cap} (got {n}); use float_sequences")


# ---------------------------------------------------------------------------
# public operations


def step(dist: StateDistribution, barrier: BarrierSpec | None = None) -> StateDistribution:
    """One application of the comb kernel; mass leaving ``barrier`` is dropped."""
    out: dict[CombVertex, Fraction] = {}
    for v, m in dist.mass.items():
        if not m:
            continue
        for u, p in neighbours(v):
            if barrier is None or barrier.contains(*u):
                out[u] = out.get(u, Fraction(0)) + m * p
    return StateDistribution(out, dist.step + 1)


def position_distribution(n: int, *, limit: int | None = None) -> StateDistribution:
    """Exact law of ``S_n`` started at the origin."""
    _check_exact_steps(n, limit)
    return _to_distribution(_free_weights(n), n)


def transition_probability(n: int, k: int, l: int) -> Fraction:
    """``p^(n)((0,0), (k,l))``."""
    _check_exact_steps(n, None)
    return Fraction(_free_weights(n).get((k, l), 0), 4**n)


def survival_distribution(n: int, barrier: BarrierSpec, *, limit: int | None = None) -> StateDistribution:
    """Sub-probability law of ``S_n`` on the event that the walk never left ``barrier``."""
    _check_exact_steps(n, limit)
    for w in _evolve(n, barrier):
        pass
    return _to_distribution(w, n)


def survival_curve(n: int, barrier: BarrierSpec, *, limit: int | None = None) -> list[Fraction]:
    """``[P(S_i in barrier for all i <= k) for k in 0..n]`` from a single DP pass."""
    _check_exact_steps(n, limit)
    return [Fraction(sum(w.values()), 4**k) for k, w in enumerate(_evolve(n, barrier))]


def survival_probability(n: int, barrier: BarrierSpec, *, limit: int | None = None) -> Fraction:
    _check_exact_steps(n, limit)
    for w in _evolve(n, barrier):
        pass
    return Fraction(sum(w.values()), 4**n)


@dataclass(frozen=True)
class Expectations:
    n: int
    abs_x: Fraction
    abs_y: Fraction
    norm1: Fraction
    norm_inf: Fraction


def expectations(n: int) -> Expectations:
    """Exact ``E|S_n^x|``, ``E|S_n^y|``, ``E||S_n||_1`` and ``E||S_n||_inf``."""
    _check_exact_steps(n, None)
    w = _free_weights(n)
    ax = ay = ai = 0
    for (x, y), m in w.items():
        ax += abs(x) * m
        ay += abs(y) * m
        ai += max(abs(x), abs(y)) * m
    d = 4**n
    return Expectations(n, Fraction(ax, d), Fraction(ay, d), Fraction(ax + ay, d), Fraction(ai, d))


def deviation_expectation(n: int, axis: str) -> Fraction:
    """``E[D_n]`` along ``axis`` as ``sum_h P(D_n > h)``; the sum stops at ``h = n - 1``."""
    _check_exact_steps(n, None)
    total = Fraction(0)
    for h in range(n):
        total += 1 - survival_probability(n, BarrierSpec.deviation(axis, h))
    return total


def span_expectation(n: int, axis: str) -> Fraction:
    """``E[M_n] = 2 E[m_n]`` along ``axis``, with ``m_n`` the running maximum."""
    _check_exact_steps(n, None)
    total = Fraction(0)
    for h in range(n):
        total += 1 - survival_probability(n, BarrierSpec.one_sided(axis, h))
    return 2 * total


def exit_time_tails(radius: int, norm, k_max: int) -> list[Fraction]:
    """``[P(T > k) for k in 0..k_max]`` for the exit time of the closed ball."""
    return survival_curve(k_max, BarrierSpec.ball(radius, norm), limit=max(k_max, EXACT_MAX_STEPS))


def _tooth_heights(radius: int, norm: str) -> list[int]:
    if norm == "inf":
        return [radius] * (2 * radius + 1)
    return [radius - abs(x) for x in range(-radius, radius + 1)]


def _exact_exit_time(radius: int, norm: str) -> Fraction:
    # Gaussian elimination in an ordering with no fill-in: each tooth is a path
    # hanging off the axis, eliminated top-down, leaving a tridiagonal system
    # on the axis vertices.
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    heights = _tooth_heights(radius, norm)
    size = len(heights)
    diag, rhs = [], []
    for hgt in heights:
        # u_j = c + d * u_{j-1} for the vertex at height j of the tooth
        c, d = Fraction(0), Fraction(0)
        for _ in range(hgt):
            piv = 1 - half * d
            c, d = (1 + half * c) / piv, half / piv
        # axis row: t_x - (t_{x-1} + t_{x+1})/4 - 2 * (1/4) * (c + d t_x) = 1
        if hgt > 0:
            diag.append(1 - half * d)
            rhs.append(1 + half * c)
        else:
            diag.append(Fraction(1))
            rhs.append(Fraction(1))
    off = -quarter
    # Thomas algorithm (symmetric, diagonally dominant, exact)
    cp = [Fraction(0)] * size
    dp = [Fraction(0)] * size
    cp[0] = off / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, size):
        m = diag[i] - off * cp[i - 1]
        cp[i] = off / m
        dp[i] = (rhs[i] - off * dp[i - 1]) / m
    t = [Fraction(0)] * size
    t[-1] = dp[-1]
    for i in range(size - 2, -1, -1):
        t[i] = dp[i] - cp[i] * t[i + 1]
    return t[radius]


def _ball_system(radius: int, norm: str):
    import scipy.sparse as sp

    heights = _tooth_heights(radius, norm)
    index = {}
    for i, x in enumerate(range(-radius, radius + 1)):
        for y in range(-heights[i], heights[i] + 1):
            index[(x, y)] = len(index)
    rows, cols, vals = [], [], []
    deg = np.empty(len(index))
    for (x, y), i in index.items():
        deg[i] = 4.0 if y == 0 else 2.0
        rows.append(i)
        cols.append(i)
        vals.append(1.0)
        for u, p in neighbours((x, y)):
            j = index.get((u.x, u.y))
            if j is not None:
                rows.append(i)
                cols.append(j)
                vals.append(-float(p))
    n = len(index)
    a = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    return a, deg, index


def _float_exit_time(radius: int, norm: str, tol: float = 1e-10) -> float:
    import scipy.sparse as sp
    from scipy.sparse.linalg import cg

    a, deg, index = _ball_system(radius, norm)
    # reversible w.r.t. the degree measure: D^{1/2} A D^{-1/2} is symmetric
    s = np.sqrt(deg)
    sym = sp.diags(s) @ a @ sp.diags(1.0 / s)
    sym = ((sym + sym.T) * 0.5).tocsr()
    b = s.copy()
    x, info = cg(sym, b, rtol=1e-15, atol=0.0, maxiter=200 * (2 * radius + 1) ** 2)
    t = x / s
    resid = np.max(np.abs(a @ t - 1.0))
    if info < 0 or resid > tol * max(1.0, np.max(np.abs(t))):
        raise RuntimeError(f"sparse exit-time solve did not converge (residual {resid:.3e})")
    return float(t[index[(0, 0)]])


def exit_time_expectation(radius: int, norm="inf", *, exact: bool | None = None):
    """Expected first exit time of the closed ball of ``radius`` in the given norm.

    Solves ``(I - Q) t = 1`` over the ball.  Radii up to ``EXACT_MAX_RADIUS``
    are solved exactly and return a :class:`~fractions.Fraction`; larger ones
    use a sparse conjugate-gradient solve and return a float.  Pass ``exact``
    to force either path.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    norm = _norm_key(norm)
    if exact is None:
        exact = radius <= EXACT_MAX_RADIUS
    if exact:
        return _exact_exit_time(radius, norm)
    return _float_exit_time(radius, norm)


def path_counts_1d(h: int, k: int, l: int, n: int) -> int:
    """Number of ``+-1`` paths of length ``n`` from 0 to ``l`` staying in ``[-k, h]``."""
    if h < 0 or k < 0:
        raise ValueError("barriers must be >= 0")
    if not -k <= l <= h:
        raise ValueError(f"endpoint {l} outside [-{k}, {h}]")
    width = h + k + 1
    counts = [0] * width
    counts[k] = 1
    for _ in range(n):
        new = [0] * width
        for i, c in enumerate(counts):
            if c:
                if i > 0:
                    new[i - 1] += c
                if i + 1 < width:
                    new[i + 1] += c
        counts = new
    return counts[l + k]


# ---------------------------------------------------------------------------
# float mode (trend checks only, never equality tests)


@dataclass
class FloatSequences:
    """Float expectations for ``n = 0..n_max``; ``leak`` bounds truncated mass."""

    n: np.ndarray
    abs_x: np.ndarray
    abs_y: np.ndarray
    dev_x: np.ndarray
    dev_y: np.ndarray
    span_x: np.ndarray
    span_y: np.ndarray
    leak: float = 0.0
    extras: dict = field(default_factory=dict)


def _srw_one_sided_max(kmax: int, hmax: int) -> np.ndarray:
    """``E[max_{j<=k} X_j]`` for the simple random walk, ``k = 0..kmax``."""
    lo = kmax
    width = lo + hmax + 2
    # rows: barrier h = 0..hmax, columns: position -lo..hmax+1
    p = np.zeros((hmax + 1, width))
    p[:, lo] = 1.0
    pos = np.arange(-lo, hmax + 2)
    mask = pos[None, :] <= np.arange(hmax + 1)[:, None]
    out = np.zeros(kmax + 1)
    for k in range(1, kmax + 1):
        q = np.zeros_like(p)
        q[:, 1:] += 0.5 * p[:, :-1]
        q[:, :-1] += 0.5 * p[:, 1:]
        p = q * mask
        out[k] = np.sum(1.0 - p.sum(axis=1))
    return out


def _srw_two_sided_max(kmax: int, hmax: int) -> np.ndarray:
    """``E[max_{j<=k} |X_j|]`` for the simple random walk."""
    width = 2 * hmax + 3
    c = hmax + 1
    p = np.zeros((hmax + 1, width))
    p[:, c] = 1.0
    pos = np.arange(-c, c + 1)
    mask = np.abs(pos)[None, :] <= np.arange(hmax + 1)[:, None]
    out = np.zeros(kmax + 1)
    for k in range(1, kmax + 1):
        q = np.zeros_like(p)
        q[:, 1:] += 0.5 * p[:, :-1]
        q[:, :-1] += 0.5 * p[:, 1:]
        p = q * mask
        out[k] = np.sum(1.0 - p.sum(axis=1))
    return out


def _srw_abs(kmax: int) -> np.ndarray:
    p = np.zeros(2 * kmax + 3)
    c = kmax + 1
    p[c] = 1.0
    pos = np.abs(np.arange(-c, c + 1))
    out = np.zeros(kmax + 1)
    for k in range(1, kmax + 1):
        q = np.zeros_like(p)
        q[1:] += 0.5 * p[:-1]
        q[:-1] += 0.5 * p[1:]
        p = q
        out[k] = p @ pos
    return out


def _vertical_step(p: np.ndarray, c: int) -> np.ndarray:
    """One step of the vertical projection along the last axis (index ``c`` is height 0)."""
    q = np.zeros_like(p)
    q[..., 1:] += 0.5 * p[..., :-1]
    q[..., :-1] += 0.5 * p[..., 1:]
    # correct the axis column: loops 1/2, up/down 1/4 each
    p0 = p[..., c]
    q[..., c + 1] -= 0.25 * p0
    q[..., c - 1] -= 0.25 * p0
    q[..., c] += 0.5 * p0
    return q


def float_sequences(n_max: int, *, width: int | None = None) -> FloatSequences:
    """Float DP for the six mean statistics, ``n = 0..n_max``.

    Uses the realization ``S_n = (X_{L_n}, Y_n)``: ``Y`` is the vertical
    projection (holding with probability 1/2 at height 0), ``L_n`` counts
    those holding steps, and ``X`` is an independent simple random walk.
    Horizontal statistics are mixtures of 1-D walk statistics over the law of
    ``L_n``.  Heights and loop counts are truncated at ``width`` (default
    ``8 sqrt(n_max) + 16``); the dropped mass is reported in ``leak``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if width is None:
        width = int(8 * math.sqrt(n_max)) + 16
    ymax = min(n_max, width)
    lmax = min(n_max, width)
    c = ymax + 1
    ycols = 2 * ymax + 3
    heights = np.abs(np.arange(-c, c + 1))

    # joint law of (L_n, Y_n): rows are loop counts
    joint = np.zeros((lmax + 2, ycols))
    joint[0, c] = 1.0
    loop_law = np.zeros((n_max + 1, lmax + 1))
    loop_law[0, 0] = 1.0
    abs_y = np.zeros(n_max + 1)

    # barrier sweeps for the vertical maxima
    hmax = ymax
    dev = np.zeros((hmax + 1, ycols))
    dev[:, c] = 1.0
    dev_mask = heights[None, :] <= np.arange(hmax + 1)[:, None]
    one = np.zeros((hmax + 1, ycols))
    one[:, c] = 1.0
    one_mask = np.arange(-c, c + 1)[None, :] <= np.arange(hmax + 1)[:, None]
    edge = np.ones(ycols, dtype=bool)
    edge[0] = edge[-1] = False
    dev_y = np.zeros(n_max + 1)
    span_y = np.zeros(n_max + 1)

    leak = 0.0
    for n in range(1, n_max + 1):
        stay = 0.5 * joint[:, c].copy()
        joint = _vertical_step(joint, c)
        joint[:, c] -= stay
        joint[1:, c] += stay[:-1]
        leak = max(leak, float(joint[-1].sum() + joint[:, 0].sum() + joint[:, -1].sum()))
        joint[-1] = 0.0
        joint[:, 0] = joint[:, -1] = 0.0
        loop_law[n] = joint[: lmax + 1].sum(axis=1)
        abs_y[n] = joint.sum(axis=0) @ heights

        dev = _vertical_step(dev, c) * dev_mask
        one = _vertical_step(one, c) * one_mask * edge
        dev_y[n] = np.sum(1.0 - dev.sum(axis=1))
        span_y[n] = 2.0 * np.sum(1.0 - one.sum(axis=1))

    fx_abs = _srw_abs(lmax)
    fx_dev = _srw_two_sided_max(lmax, lmax)
    fx_span = 2.0 * _srw_one_sided_max(lmax, lmax)
    return FloatSequences(
        n=np.arange(n_max + 1),
        abs_x=loop_law @ fx_abs,
        abs_y=abs_y,
        dev_x=loop_law @ fx_dev,
        dev_y=dev_y,
        span_x=loop_law @ fx_span,
        span_y=span_y,
        leak=leak,
    )
