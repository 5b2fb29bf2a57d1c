"""Truncated formal power series with exact rational coefficients.

A :class:`PowerSeries` of order ``N`` stores the coefficients of
``z**0 .. z**N``; everything above ``z**N`` is discarded.  Coefficients are
``gmpy2.mpq`` rationals, which are always kept in lowest terms and compare
equal to the matching :class:`fractions.Fraction`.

No operation here rounds.  Binary operations require both operands to have
the same order, so a truncation mistake surfaces as an error instead of a
silently shorter result.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

Rational = mpq
Scalar = Union[int, Fraction, "mpq"]

DEFAULT_ORDER = 64

_ZERO = mpq(0)
_ONE = mpq(1)
_MPQ_TYPE = type(_ZERO)


class SeriesError(ValueError):
    """Base class for power-series usage and domain errors."""


class OrderMismatchError(SeriesError):
    pass


class SingularDivisionError(SeriesError, ZeroDivisionError):
    pass


class SeriesDomainError(SeriesError):
    pass


class NotDivisibleError(SeriesError):
    pass


def _as_rational(x) -> mpq:
    if isinstance(x, _MPQ_TYPE):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, _RationalABC):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"exact rational coefficient required, got {type(x).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, _MPQ_TYPE)) and not isinstance(x, bool)


class PowerSeries:
    """Immutable truncated power series ``sum(c[n] z**n for n <= order)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        c = [_as_rational(x) for x in coeffs]
        if order is None:
            if not c:
                raise SeriesError("empty coefficient list needs an explicit order")
        else:
            if order < 0:
                raise SeriesError("order must be >= 0")
            if len(c) > order + 1:
                del c[order + 1:]
            else:
                c.extend([_ZERO] * (order + 1 - len(c)))
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: Sequence[mpq]) -> "PowerSeries":
        s = object.__new__(cls)
        s._c = tuple(coeffs)
        return s

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls._raw([_ZERO] * (order + 1))

    @classmethod
    def constant(cls, value: Scalar, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls([value], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, c: Scalar = 1) -> "PowerSeries":
        """``c * z**k`` (zero if ``k > order``)."""
        out = [_ZERO] * (order + 1)
        if k <= order:
            out[k] = _as_rational(c)
        return cls._raw(out)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls.monomial(1, order)

    # basic accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __len__(self):
        return len(self._c)

    def __getitem__(self, n):
        return self._c[n]

    def __iter__(self):
        return iter(self._c)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for i, x in enumerate(self._c):
            if x:
                return i
        return None

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise SeriesError(f"cannot raise order {self.order} to {order}")
        return PowerSeries._raw(self._c[: order + 1])

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(int(x.numerator), int(x.denominator)) for x in self._c]

    def to_floats(self) -> list[float]:
        return [float(x) for x in self._c]

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        terms = []
        for i, x in enumerate(self._c):
            if not x:
                continue
            if i == 0:
                terms.append(str(x))
            else:
                terms.append(f"{x}*z^{i}" if i > 1 else f"{x}*z")
            if len(terms) == 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"PowerSeries({body}; O(z^{self.order + 1}))"

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "PowerSeries"):
        if len(self._c) != len(other._c):
            raise OrderMismatchError(f"order {self.order} vs {other.order}")

    def __neg__(self):
        return PowerSeries._raw([-x for x in self._c])

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            return add(self, other)
        if _is_scalar(other):
            c = list(self._c)
            c[0] = c[0] + _as_rational(other)
            return PowerSeries._raw(c)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            self._check(other)
            return PowerSeries._raw([a - b for a, b in zip(self._c, other._c)])
        if _is_scalar(other):
            return self + (-_as_rational(other))
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        if _is_scalar(other):
            k = _as_rational(other)
            return PowerSeries._raw([k * x for x in self._c])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return div(self, other)
        if _is_scalar(other):
            k = _as_rational(other)
            if not k:
                raise SingularDivisionError("division by the zero scalar")
            return PowerSeries._raw([x / k for x in self._c])
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return div(PowerSeries.constant(other, self.order), self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise SeriesError("only nonnegative integer powers are supported")
        result = PowerSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result


# ---------------------------------------------------------------------------
# module-level operations


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    a._check(b)
    return PowerSeries._raw([x + y for x, y in zip(a._c, b._c)])


def _mul_coeffs(a: Sequence[mpq], b: Sequence[mpq], n: int) -> list:
    out = [_ZERO] * (n + 1)
    nzb = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        lim = n - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    return PowerSeries._raw(_mul_coeffs(a._c, b._c, a.order))


def div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Quotient ``q`` with ``q * b == a`` to the truncation order."""
    a._check(b)
    b0 = b._c[0]
    if not b0:
        raise SingularDivisionError("divisor has zero constant term")
    inv = 1 / b0
    n = a.order
    bc = b._c
    nzb = [(j, y) for j, y in enumerate(bc) if y and j > 0]
    q = []
    for m in range(n + 1):
        acc = a._c[m]
        for j, y in nzb:
            if j > m:
                break
            qk = q[m - j]
            if qk:
                acc -= qk * y
        q.append(acc * inv)
    return PowerSeries._raw(q)


def sqrt_series(a: PowerSeries) -> PowerSeries:
    """Principal square root of a series with constant term 1."""
    if a._c[0] != 1:
        raise SeriesDomainError("sqrt_series needs constant term exactly 1")
    n = a.order
    s = [_ONE]
    half = mpq(1, 2)
    for m in range(1, n + 1):
        acc = a._c[m]
        for k in range(1, (m + 1) // 2):
            p = s[k] * s[m - k]
            if p:
                acc -= 2 * p
        if m % 2 == 0:
            acc -= s[m // 2] * s[m // 2]
        s.append(acc * half)
    return PowerSeries._raw(s)


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Substitution ``f(g(z))``; ``g`` must have zero constant term."""
    f._check(g)
    if g._c[0]:
        raise SeriesDomainError("inner series of a composition needs zero constant term")
    val = g.valuation()
    n = f.order
    if val is None:
        return PowerSeries.constant(f._c[0], n)
    top = min(n, n // val)
    acc = [_ZERO] * (n + 1)
    acc[0] = f._c[top]
    for k in range(top - 1, -1, -1):
        acc = _mul_coeffs(acc, g._c, n)
        acc[0] += f._c[k]
    return PowerSeries._raw(acc)


def shift_div_z(a: PowerSeries, k: int) -> PowerSeries:
    """``a / z**k``; the first ``k`` coefficients must vanish. Order drops by ``k``."""
    if k < 0:
        raise SeriesError("shift must be >= 0")
    if k > a.order:
        raise SeriesError(f"cannot divide an order-{a.order} series by z^{k}")
    for i in range(k):
        if a._c[i]:
            raise NotDivisibleError(f"coefficient of z^{i} is {a._c[i]}, not divisible by z^{k}")
    return PowerSeries._raw(a._c[k:])


def coeff(a: PowerSeries, n: int) -> mpq:
    if not 0 <= n <= a.order:
        raise IndexError(f"coefficient {n} outside 0..{a.order}")
    return a._c[n]
