from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from combwalk.series import (
    NotDivisibleError,
    OrderMismatchError,
    PowerSeries,
    SeriesDomainError,
    SingularDivisionError,
    compose,
    coeff,
    shift_div_z,
    sqrt_series,
)

ORDER = 8
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def series(order=ORDER, const=None):
    base = st.lists(fracs, min_size=order + 1, max_size=order + 1)
    if const is None:
        return base.map(lambda c: PowerSeries(c, order))
    return base.map(lambda c: PowerSeries([const] + c[1:], order))


def test_construction_pads_and_truncates():
    s = PowerSeries([1, 2], 4)
    assert s.coeffs == (1, 2, 0, 0, 0)
    assert PowerSeries([1, 2, 3, 4], 1).coeffs == (1, 2)
    assert s.order == 4


def test_coefficients_are_reduced_rationals():
    s = PowerSeries([Fraction(2, 4), Fraction(6, -8)], 1)
    assert s[0] == Fraction(1, 2) and s[0].denominator == 2
    assert s[1] == Fraction(-3, 4) and s[1].denominator > 0


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        PowerSeries([0.5], 2)


def test_geometric_inverse():
    one_minus_z = PowerSeries([1, -1], 6)
    assert (1 / one_minus_z).coeffs == (1,) * 7


def test_sqrt_of_one_minus_z():
    s = sqrt_series(PowerSeries([1, -1], 4))
    assert s.to_fractions() == [1, Fraction(-1, 2), Fraction(-1, 8), Fraction(-1, 16), Fraction(-5, 128)]


def test_errors():
    with pytest.raises(OrderMismatchError):
        PowerSeries.one(3) + PowerSeries.one(4)
    with pytest.raises(SingularDivisionError):
        PowerSeries.one(3) / PowerSeries.variable(3)
    with pytest.raises(ZeroDivisionError):
        PowerSeries.one(3) / 0
    with pytest.raises(SeriesDomainError):
        sqrt_series(PowerSeries([2, 1], 3))
    with pytest.raises(SeriesDomainError):
        compose(PowerSeries.one(3), PowerSeries.one(3))
    with pytest.raises(NotDivisibleError):
        shift_div_z(PowerSeries([0, 1], 3), 2)
    with pytest.raises(IndexError):
        coeff(PowerSeries.one(3), 4)


def test_shift_div_z_drops_order():
    s = shift_div_z(PowerSeries([0, 0, 1, 2], 3), 2)
    assert s.order == 1 and s.coeffs == (1, 2)


def test_compose_with_monomial():
    f = PowerSeries([1, 1, 1, 1, 1], 4)  # 1/(1-z)
    z2 = PowerSeries.monomial(2, 4)
    assert compose(f, z2).coeffs == (1, 0, 1, 0, 1)


def test_repr_mentions_order():
    assert "O(z^4)" in repr(PowerSeries([1, 2], 3))


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PowerSeries.zero(ORDER)


@given(series(), series(const=Fraction(3, 2)))
def test_division_inverts_multiplication(a, b):
    assert (a / b) * b == a
    assert (a * b) / b == a


@given(series(const=1))
def test_sqrt_squares_back(a):
    r = sqrt_series(a)
    assert r * r == a
    assert r[0] == 1


@given(series(), series(const=0), series(const=0))
def test_compose_is_a_homomorphism(f, g, h):
    # (f o g) evaluated: composition respects products
    assert compose(f * h, g) == compose(f, g) * compose(h, g)


@given(series(), st.integers(0, 12))
def test_power_matches_repeated_product(a, k):
    p = PowerSeries.one(ORDER)
    for _ in range(k):
        p = p * a
    assert a**k == p
