"""Generating functions of the comb walk as exact truncated power series.

Conventions
-----------
* ``z`` marks the number of steps of the comb walk.
* ``w`` marks steps of a 1-D ``+-1`` path (used by :func:`psi_two_sided`).
* ``v`` is the uniformising variable of a closed form.  The vertical one solves
  ``v / (1 + v**2) = z / 2`` and the horizontal one solves
  ``v / (1 + v**2) = w(z)``.  Closed forms in ``v`` are turned into
  ``z``-series by plugging in the series :func:`vertical_v` or
  :func:`horizontal_v`, both obtained with :func:`catalan_inverse`.

``a_i`` is the determinant of the ``(i+1) x (i+1)`` tridiagonal matrix with
unit diagonal and ``-t`` off the diagonal.  It satisfies
``a_i = a_{i-1} - t**2 a_{i-2}`` with ``a_{-1} = a_0 = 1``.

Infinite sums over a barrier height ``h`` are cut at ``h = order``.  No
information is lost: ``P(D_n > h) = 0`` once ``h >= n``, and every summand
dropped has valuation above the truncation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .series import (
    DEFAULT_ORDER,
    PowerSeries,
    SeriesError,
    shift_div_z,
    sqrt_series,
)

__all__ = [
    "GFCatalogEntry",
    "green_G",
    "green_F1",
    "green_F2",
    "green",
    "excursion_E",
    "excursion_G0",
    "a_det",
    "a_det_closed",
    "a_at",
    "w_of_z",
    "catalan_series",
    "catalan_inverse",
    "vertical_v",
    "horizontal_v",
    "psi_two_sided",
    "psi_two_sided_at",
    "psi_h",
    "psi_h_closed",
    "deviation_H",
    "deviation_H_closed",
    "psi_hat",
    "psi_hat_sum",
    "psi_hat_sum_direct",
    "mean_dist_x_gf",
    "mean_dist_y_gf",
    "mean_deviation_gf",
    "mean_deviation_gf_closed",
    "bounded_first_passage",
    "bounded_excursion",
    "bounded_final_excursions",
    "theta_gf",
    "theta_gf_closed",
    "span_tail_x",
    "span_tail_y",
    "span_psi_hat_system",
    "span_gf_x",
    "span_gf_y",
    "geometric",
    "solve_tridiagonal",
]


@dataclass(frozen=True)
class GFCatalogEntry:
    name: str
    variable: str
    series: PowerSeries

    def __post_init__(self):
        if self.variable not in ("z", "w", "v"):
            raise ValueError(f"unknown formal variable {self.variable!r}")

    def __add__(self, other):
        if isinstance(other, GFCatalogEntry):
            if other.variable != self.variable:
                raise SeriesError(
                    f"cannot add a series in {other.variable} to a series in {self.variable}"
                )
            return GFCatalogEntry(f"{self.name}+{other.name}", self.variable, self.series + other.series)
        return NotImplemented


# ---------------------------------------------------------------------------
# small helpers


def _z(order: int) -> PowerSeries:
    return PowerSeries.variable(order)


@lru_cache(maxsize=None)
def _root(order: int) -> PowerSeries:
    """``sqrt(1 - z^2)``."""
    z = _z(order)
    return sqrt_series(1 - z * z)


@lru_cache(maxsize=None)
def geometric(order: int) -> PowerSeries:
    """``1 / (1 - z)``."""
    return PowerSeries([1] * (order + 1), order)


def _check_order(order: int, minimum: int = 0):
    if order < minimum:
        raise ValueError(f"order must be >= {minimum}")


def solve_tridiagonal(
    sub: Sequence[PowerSeries],
    diag: Sequence[PowerSeries],
    sup: Sequence[PowerSeries],
    rhs: Sequence[PowerSeries],
) -> list[PowerSeries]:
    """Thomas algorithm over the series ring.

    Row ``i`` reads ``sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]``
    (``sub[0]`` and ``sup[-1]`` are ignored).  Every pivot must have a
    nonzero constant term, which holds whenever the off-diagonal entries are
    multiples of ``z``.
    """
    m = len(diag)
    cp: list[PowerSeries] = [None] * m  # type: ignore[list-item]
    dp: list[PowerSeries] = [None] * m  # type: ignore[list-item]
    piv = diag[0]
    cp[0] = sup[0] / piv if m > 1 else None
    dp[0] = rhs[0] / piv
    for i in range(1, m):
        piv = diag[i] - sub[i] * cp[i - 1]
        if i < m - 1:
            cp[i] = sup[i] / piv
        dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / piv
    x: list[PowerSeries] = [None] * m  # type: ignore[list-item]
    x[-1] = dp[-1]
    for i in range(m - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


# ---------------------------------------------------------------------------
# Green function


@lru_cache(maxsize=None)
def green_G(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Return-probability series ``G(z) = sqrt(2) / sqrt(1 - z^2 + sqrt(1 - z^2))``."""
    _check_order(order, 2)
    s = _root(order)
    half = (1 - _z(order) ** 2 + s) / 2
    return 1 / sqrt_series(half)


@lru_cache(maxsize=None)
def green_F1(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``F1(z) = (1 + sqrt(1-z^2) - sqrt(2) sqrt(1 - z^2 + sqrt(1-z^2))) / z``."""
    _check_order(order, 2)
    n = order + 1
    s = _root(n)
    half = (1 - _z(n) ** 2 + s) / 2
    # sqrt(2) * sqrt(q) == 2 * sqrt(q / 2)
    return shift_div_z(1 + s - 2 * sqrt_series(half), 1)


@lru_cache(maxsize=None)
def green_F2(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``F2(z) = (1 - sqrt(1 - z^2)) / z``."""
    _check_order(order, 2)
    return shift_div_z(1 - _root(order + 1), 1)


def green(k: int, l: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Generating function of ``p^(n)((0,0), (k,l))``."""
    if order < abs(k) + abs(l):
        raise ValueError("order must be at least |k| + |l|")
    order = max(order, 2)
    g = green_G(order) * green_F1(order) ** abs(k)
    if l == 0:
        return g
    return g * green_F2(order) ** abs(l) / 2


# ---------------------------------------------------------------------------
# excursions on a single tooth


@lru_cache(maxsize=None)
def excursion_G0(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Tooth excursions back to the axis: ``2 (1 - sqrt(1 - z^2)) / z^2``."""
    return shift_div_z(2 * (1 - _root(order + 2)), 2)


@lru_cache(maxsize=None)
def excursion_E(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Final tooth excursion ``E(z) = 2 (1 - s) / (z (s - 1 + z))``, ``s = sqrt(1 - z^2)``.

    Its ``n``-th coefficient is the probability of making no horizontal move
    in ``n`` steps.
    """
    _check_order(order, 2)
    num = shift_div_z(2 * (1 - _root(order + 2)), 2)
    s1 = _root(order + 1)
    den = shift_div_z(s1 - 1 + _z(order + 1), 1)
    return num / den


@lru_cache(maxsize=None)
def w_of_z(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Weight of one horizontal move with its preceding tooth excursion, ``(1 - s) / (2z)``."""
    _check_order(order, 1)
    return shift_div_z(1 - _root(order + 1), 1) / 2


# ---------------------------------------------------------------------------
# Catalan inversion and the uniformising variables


@lru_cache(maxsize=None)
def catalan_series(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum_k Catalan_k t^k``."""
    c = [1]
    for k in range(order):
        c.append(c[-1] * 2 * (2 * k + 1) // (k + 2))
    return PowerSeries(c, order)


def catalan_inverse(w: PowerSeries) -> PowerSeries:
    """The branch ``v`` with ``v(0) = 0`` of ``v / (1 + v^2) = w``.

    Newton iteration on ``v - w (1 + v^2) = 0``; each round doubles the
    number of correct coefficients.
    """
    if w[0]:
        raise SeriesError("catalan_inverse needs a series with zero constant term")
    v = w
    while True:
        f = v - w * (1 + v * v)
        if f.valuation() is None:
            return v
        v = v - f / (1 - 2 * w * v)


@lru_cache(maxsize=None)
def vertical_v(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``v`` with ``v / (1 + v^2) = z / 2`` (equals ``F2``)."""
    return catalan_inverse(_z(order) / 2)


@lru_cache(maxsize=None)
def horizontal_v(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``v`` with ``v / (1 + v^2) = w(z)``."""
    return catalan_inverse(w_of_z(order))


# ---------------------------------------------------------------------------
# tridiagonal determinants


def a_at(i: int, t: PowerSeries) -> PowerSeries:
    """``a_i`` evaluated at the off-diagonal entry ``t`` (any series)."""
    if i < -1:
        raise ValueError(f"a_i is defined for i >= -1, got {i}")
    prev, cur = PowerSeries.one(t.order), PowerSeries.one(t.order)
    if i <= 0:
        return cur
    t2 = t * t
    for _ in range(i):
        prev, cur = cur, cur - t2 * prev
    return cur


def _a_table(top: int, t: PowerSeries) -> dict[int, PowerSeries]:
    """``{i: a_i(t)}`` for ``-1 <= i <= top``."""
    table = {-1: PowerSeries.one(t.order), 0: PowerSeries.one(t.order)}
    t2 = t * t
    for i in range(1, top + 1):
        table[i] = table[i - 1] - t2 * table[i - 2]
    return table


def a_det(i: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``det A_i(z/2)`` as a series in ``z``."""
    return a_at(i, _z(order) / 2)


def a_det_closed(i: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(1 - v^{2i+4}) / ((1 - v^2)(1 + v^2)^{i+1})`` with the vertical ``v``."""
    if i < -1:
        raise ValueError(f"a_i is defined for i >= -1, got {i}")
    v = vertical_v(order)
    v2 = v * v
    return (1 - v2 ** (i + 2)) / ((1 - v2) * (1 + v2) ** (i + 1))


# ---------------------------------------------------------------------------
# 1-D paths between barriers


def psi_two_sided_at(h: int, k: int, l: int, w: PowerSeries, table=None) -> PowerSeries:
    """``Psi_{h,k;l}`` evaluated at the series ``w``."""
    if h < 0 or k < 0:
        raise ValueError("barriers must be >= 0")
    if not -k <= l <= h:
        raise ValueError(f"endpoint {l} outside [-{k}, {h}]")
    a = table if table is not None else _a_table(h + k, w)
    if l >= 0:
        num = w**l * a[h - l - 1] * a[k - 1]
    else:
        num = w ** (-l) * a[h - 1] * a[k + l - 1]
    return num / a[h + k]


def psi_two_sided(h: int, k: int, l: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Series in ``w`` counting ``+-1`` paths ``0 -> l`` that stay in ``[-k, h]``."""
    return psi_two_sided_at(h, k, l, _z(order))


def _psi_h_at(h: int, w: PowerSeries) -> PowerSeries:
    table = _a_table(2 * h, w)
    total = PowerSeries.zero(w.order)
    for l in range(-h, h + 1):
        total = total + psi_two_sided_at(h, h, l, w, table)
    return total


def psi_h(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Series in ``w`` counting paths of maximal deviation at most ``h``."""
    return _psi_h_at(h, _z(order))


def _psi_h_of_v(h: int, v: PowerSeries) -> PowerSeries:
    v2 = v * v
    p = v ** (h + 1)
    return (1 + v2) * (1 - p) ** 2 / ((1 - v) ** 2 * (1 + p * p))


def psi_h_closed(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(1+v^2)(1-v^{h+1})^2 / ((1-v)^2 (1+v^{2h+2}))`` with ``v/(1+v^2) = w``."""
    return _psi_h_of_v(h, catalan_inverse(_z(order)))


# ---------------------------------------------------------------------------
# maximal deviation


def deviation_H(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Generating function of ``P(D_n^x <= h)``: ``psi_h(w(z)) E(z)``."""
    if h < 0:
        raise ValueError("h must be >= 0")
    return _psi_h_of_v(h, horizontal_v(order)) * excursion_E(order)


def deviation_H_closed(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(1+6v^2+v^4)(1-v^{h+1})^2 / ((1-v)^4 (1+v^{2h+2}))`` with the horizontal ``v``."""
    v = horizontal_v(order)
    v2 = v * v
    p = v ** (h + 1)
    return (1 + 6 * v2 + v2 * v2) * (1 - p) ** 2 / ((1 - v) ** 4 * (1 + p * p))


def _psi_hat_denominator(h: int, a: dict, z: PowerSeries) -> PowerSeries:
    den = (1 - z / 2) * a[h - 1]
    if h >= 1:
        den = den - z * z * a[h - 2] / 4
    return den


def psi_hat(h: int, l: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Generating function of ``P(D_n^y <= h, |S_n^y| = l)``.

    ``(z/2)^l a_{h-l-1} / ((1 - z/2) a_{h-1} - z^2 a_{h-2} / 4)``; for
    ``h = 0`` the last term is absent.
    """
    if h < 0:
        raise ValueError("h must be >= 0")
    if not 0 <= l <= h:
        raise ValueError(f"l must lie in 0..{h}")
    z = _z(order)
    a = _a_table(h, z / 2)
    return (z / 2) ** l * a[h - l - 1] / _psi_hat_denominator(h, a, z)


def psi_hat_sum_direct(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum_{l=0}^h psi_hat(h, l)`` from the determinant formula."""
    z = _z(order)
    a = _a_table(h, z / 2)
    num = PowerSeries.zero(order)
    zl = PowerSeries.one(order)
    for l in range(h + 1):
        num = num + zl * a[h - l - 1]
        zl = zl * z / 2
    return num / _psi_hat_denominator(h, a, z)


def _psi_hat_sum_of_v(h: int, v: PowerSeries) -> PowerSeries:
    p = v ** (h + 1)
    return (1 + v * v) * (1 - p) * (1 - p * v) / ((1 - v) ** 2 * (1 + p * p * v))


def psi_hat_sum(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Generating function of ``P(D_n^y <= h)``, from its closed form in the vertical ``v``."""
    if h < 0:
        raise ValueError("h must be >= 0")
    return _psi_hat_sum_of_v(h, vertical_v(order))


# ---------------------------------------------------------------------------
# mean distance and mean maximal deviation


def mean_dist_x_gf(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum E|S_n^x| z^n = 2 G F1 / (1 - F1)^2 / (1 - F2)``.

    The factor 2 accounts for both signs of ``k`` in
    ``2 sum_k k sum_l G((0,0),(k,l)|z)``; the ``l = 0`` tooth term carries no
    factor 1/2.
    """
    _check_order(order, 2)
    g, f1, f2 = green_G(order), green_F1(order), green_F2(order)
    return 2 * g * f1 / ((1 - f1) ** 2 * (1 - f2))


def mean_dist_y_gf(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum E|S_n^y| z^n = G (1 + F1) / (1 - F1) * F2 / (1 - F2)^2``."""
    _check_order(order, 2)
    g, f1, f2 = green_G(order), green_F1(order), green_F2(order)
    return g * (1 + f1) * f2 / ((1 - f1) * (1 - f2) ** 2)


def mean_deviation_gf(axis: str, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum_n E[D_n] z^n = sum_h (1/(1-z) - P_h(z))`` with ``P_h`` the GF of ``P(D_n <= h)``."""
    _check_order(order, 2)
    geo = geometric(order)
    total = PowerSeries.zero(order)
    if axis == "x":
        v = horizontal_v(order)
        e = excursion_E(order)
        for h in range(order + 1):
            total = total + (geo - _psi_h_of_v(h, v) * e)
    elif axis == "y":
        v = vertical_v(order)
        for h in range(order + 1):
            total = total + (geo - _psi_hat_sum_of_v(h, v))
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return total


def mean_deviation_gf_closed(axis: str, order: int = DEFAULT_ORDER) -> PowerSeries:
    """The same generating function written as a single sum over ``v^h``."""
    total = PowerSeries.zero(order)
    if axis == "x":
        v = horizontal_v(order)
        v2 = v * v
        p = PowerSeries.one(order)
        for _ in range(order):
            p = p * v
            total = total + p / (1 + p * p)
        return 2 * (1 + 6 * v2 + v2 * v2) / (1 - v) ** 4 * total
    if axis == "y":
        v = vertical_v(order)
        p = PowerSeries.one(order)
        for _ in range(order):
            p = p * v
            total = total + p / (1 + p * p * v)
        return (1 + v * v) * (1 + v) / (1 - v) ** 2 * total
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


# ---------------------------------------------------------------------------
# exit time from the infinity-norm ball


def _tooth_matrix(n: int, order: int):
    """Rows of ``A_{n-1}(z/2)``: diagonal 1, off-diagonal ``-z/2``."""
    z = _z(order)
    off = -z / 2
    one = PowerSeries.one(order)
    return [off] * n, [one] * n, [off] * n


def bounded_first_passage(n: int, order: int = DEFAULT_ORDER) -> list[PowerSeries]:
    """``[F~_n(l, 0 | z) for l in 1..n]``: first passage to the axis from height ``l``, heights kept ``<= n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sub, diag, sup = _tooth_matrix(n, order)
    rhs = [_z(order) / 2] + [PowerSeries.zero(order)] * (n - 1)
    return solve_tridiagonal(sub, diag, sup, rhs)


def bounded_excursion(n: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``G~_n(z) = 1 / (1 - z F~_n(1,0|z) / 2)``."""
    f1 = bounded_first_passage(n, order)[0]
    return 1 / (1 - _z(order) * f1 / 2)


def bounded_final_excursions(n: int, order: int = DEFAULT_ORDER) -> list[PowerSeries]:
    """``[G~_n(0, l | z) for l in 0..n]``, tooth paths from the axis ending at height ``+-l``."""
    g = bounded_excursion(n, order)
    sub, diag, sup = _tooth_matrix(n, order)
    rhs = [PowerSeries.one(order)] + [PowerSeries.zero(order)] * (n - 1)
    # paths from height 1 to height l inside 1..n
    reach = solve_tridiagonal(sub, diag, sup, rhs)
    z = _z(order)
    return [g] + [g * z * r / 2 for r in reach]


def theta_gf(n: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Generating function of ``P(T_n^inf > k)``.

    Horizontal moves, each preceded by a bounded tooth excursion of weight
    ``z G~_n(z) / 4``, are counted by ``psi_n``; a final bounded excursion is
    appended.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    w_n = _z(order) * bounded_excursion(n, order) / 4
    final = PowerSeries.zero(order)
    for g in bounded_final_excursions(n, order):
        final = final + g
    return _psi_h_at(n, w_n) * final


def theta_gf_closed(n: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """The closed form of :func:`theta_gf` in ``v`` and ``w_n``."""
    v = vertical_v(order)
    v2 = v * v
    big = v ** (2 * n + 2)
    x = v * (1 - big) / (2 * (1 - big * v2))
    u = catalan_inverse(x)
    tail = (1 + v2) * (1 - v ** (n + 2)) * (1 - v ** (n + 1)) / ((1 - v) * (1 - big * v2))
    return _psi_h_of_v(n, u) * tail


# ---------------------------------------------------------------------------
# maximal span


def span_tail_x(h: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``Psi~_h(z)``, generating function of ``P(m_n^x <= h)``."""
    v = horizontal_v(order)
    v2 = v * v
    return (1 + 6 * v2 + v2 * v2) * (1 - v ** (h + 1)) / (1 - v) ** 4


def span_psi_hat_system(h: int, k: int, order: int = DEFAULT_ORDER) -> dict[int, PowerSeries]:
    """Solve the vertical two-barrier system: ``{l: Psi^_{h,k;l}(z)}`` for ``-k <= l <= h``.

    ``Psi^_{h,k;l}`` generates the probability that the vertical projection
    stays in ``[-k, h]`` and ends at ``l``.
    """
    if h < 0 or k < 0:
        raise ValueError("barriers must be >= 0")
    z = _z(order)
    levels = list(range(h, -k - 1, -1))

    def into(src: int, dst: int) -> PowerSeries:
        # -z * p(src -> dst) as a matrix entry
        if src == 0:
            return -z / 4
        return -z / 2

    diag, sub, sup, rhs = [], [], [], []
    zero = PowerSeries.zero(order)
    for i, l in enumerate(levels):
        diag.append(1 - z / 2 if l == 0 else PowerSeries.one(order))
        sub.append(into(levels[i - 1], l) if i > 0 else zero)
        sup.append(into(levels[i + 1], l) if i + 1 < len(levels) else zero)
        rhs.append(PowerSeries.one(order) if l == 0 else zero)
    sol = solve_tridiagonal(sub, diag, sup, rhs)
    return dict(zip(levels, sol))


def _span_tail_y_system(h: int, order: int) -> PowerSeries:
    # k = order + 1 is out of reach within the truncation, so this is the k -> inf limit
    parts = span_psi_hat_system(h, order + 1, order)
    total = PowerSeries.zero(order)
    for s in parts.values():
        total = total + s
    return total


def _span_complement_y_closed(h: int, v: PowerSeries) -> PowerSeries:
    p = v ** (h + 1)
    return (1 + v * v) / (1 - v) ** 2 * (1 + v) * p / (2 - (1 - v) * p * p)


def span_tail_y(h: int, order: int = DEFAULT_ORDER, *, method: str = "auto") -> PowerSeries:
    """``Psi^_h(z)``, generating function of ``P(m_n^y <= h)``.

    ``method="closed"`` uses the closed form (stated for ``h >= 2``),
    ``"system"`` solves the linear system; ``"auto"`` picks the system for
    ``h < 2``.
    """
    if h < 0:
        raise ValueError("h must be >= 0")
    if method == "auto":
        method = "system" if h < 2 else "closed"
    if method == "system":
        return _span_tail_y_system(h, order)
    if method == "closed":
        return geometric(order) - _span_complement_y_closed(h, vertical_v(order))
    raise ValueError(f"unknown method {method!r}")


def span_gf_x(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum_n E[m_n^x] z^n``; double it for ``E[M_n^x]``."""
    _check_order(order, 1)
    order_ = max(order, 2)
    geo = geometric(order_)
    v = horizontal_v(order_)
    v2 = v * v
    head = (1 + 6 * v2 + v2 * v2) / (1 - v) ** 4
    total = PowerSeries.zero(order_)
    p = PowerSeries.one(order_)
    for _ in range(order_ + 1):
        p = p * v
        total = total + (geo - head * (1 - p))
    return total.truncate(order)


def span_gf_y(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``sum_n E[m_n^y] z^n``; double it for ``E[M_n^y]``.

    Heights ``h = 0, 1`` come from the linear system, ``h >= 2`` from the
    closed form.
    """
    _check_order(order, 1)
    geo = geometric(order)
    v = vertical_v(order)
    total = PowerSeries.zero(order)
    for h in range(order + 1):
        if h < 2:
            total = total + (geo - _span_tail_y_system(h, order))
        else:
            total = total + _span_complement_y_closed(h, v)
    return total
