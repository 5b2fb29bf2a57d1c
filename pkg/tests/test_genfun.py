from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from combwalk import genfun as g
from combwalk import oracle
from combwalk.series import PowerSeries, shift_div_z, sqrt_series

ORDER = 30


def fr(s):
    return s.to_fractions()


# Green function --------------------------------------------------------------

def test_green_examples():
    G = g.green_G(8)
    assert G[0] == 1 and G[2] == F(3, 8)
    assert fr(g.green_F2(5)) == [0, F(1, 2), 0, F(1, 8), 0, F(1, 16)]
    assert g.green_F1(4)[0] == 0
    assert g.green(1, 0, 4)[1] == F(1, 4)
    assert g.green(0, 1, 4)[1] == F(1, 4)


def test_green_origin_matches_oracle_to_40():
    G = g.green(0, 0, 40)
    assert [G[n] for n in range(41)] == [oracle.transition_probability(n, 0, 0) for n in range(41)]


@pytest.mark.parametrize("k,l", [(2, 1), (-3, 0), (0, -4), (1, -2)])
def test_green_off_origin(k, l):
    s = g.green(k, l, 24)
    assert [s[n] for n in range(25)] == [oracle.transition_probability(n, k, l) for n in range(25)]


# excursion factor and w ------------------------------------------------------------

def test_excursion_E():
    E = g.excursion_E(10)
    assert E[0] == 1
    # P(no horizontal move in one step); see ledger
    assert E[1] == F(1, 2)


def test_excursion_E_reconstruction():
    n = 12
    E = g.excursion_E(n)
    z = PowerSeries.variable(n)
    r = sqrt_series(1 - z * z)
    num = 2 * (1 - r)
    den = z * (r - 1 + z)
    assert E * den == num


def test_w_of_z():
    w = g.w_of_z(ORDER)
    assert w[0] == 0 and w[1] == F(1, 4)
    assert w == g.green_F2(ORDER) / 2
    assert all(w[k] == 0 for k in range(0, ORDER + 1, 2))
    # w = z G~(0,0)/4 with G~ the excursion-killed tooth Green function
    assert w == shift_div_z(PowerSeries.variable(ORDER + 1) * g.excursion_G0(ORDER + 1), 0).truncate(ORDER) / 4


# Catalan inversion ---------------------------------------------------------------------

def test_catalan_inverse_roundtrip():
    half_z = PowerSeries.variable(ORDER) / 2
    v = g.catalan_inverse(half_z)
    assert v[1] == F(1, 2)
    assert v / (1 + v * v) == half_z
    assert v == g.green_F2(ORDER)


def test_catalan_inverse_rejects_constant():
    with pytest.raises(ValueError):
        g.catalan_inverse(PowerSeries.one(4))


@given(st.lists(st.fractions(-3, 3, max_denominator=7), min_size=6, max_size=6))
def test_catalan_inverse_property(c):
    w = PowerSeries([0] + c, 6)
    v = g.catalan_inverse(w)
    assert v[0] == 0
    assert v / (1 + v * v) == w


# determinants ----------------------------------------------------------------

def test_a_det_examples():
    assert g.a_det(0, 4) == PowerSeries.one(4)
    assert g.a_det(-1, 4) == PowerSeries.one(4)
    assert fr(g.a_det(1, 4)) == [1, 0, F(-1, 4), 0, 0]
    with pytest.raises(ValueError):
        g.a_det(-2, 4)


def test_a_det_recurrence_and_closed_form():
    z2 = PowerSeries.monomial(2, 40, F(1, 4))
    for i in range(1, 21):
        assert g.a_det(i, 40) == g.a_det(i - 1, 40) - z2 * g.a_det(i - 2, 40)
        assert g.a_det(i, 40) == g.a_det_closed(i, 40)


# path counts -----------------------------------------------------------------------

def test_psi_two_sided_examples():
    assert fr(g.psi_two_sided(1, 1, 0, 8)) == [1, 0, 2, 0, 4, 0, 8, 0, 16]
    with pytest.raises(ValueError):
        g.psi_two_sided(1, 1, 2, 8)


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_psi_two_sided_counts(h, k, data):
    l = data.draw(st.integers(-k, h))
    s = g.psi_two_sided(h, k, l, 14)
    assert s[abs(l)] == 1
    assert all(s[n] == oracle.path_counts_1d(h, k, l, n) for n in range(15))
    assert all(c.denominator == 1 and c >= 0 for c in s.coeffs)


@pytest.mark.parametrize("h", range(5))
def test_psi_h_sum_matches_closed_form(h):
    total = sum((g.psi_two_sided(h, h, l, 20) for l in range(-h, h + 1)), PowerSeries.zero(20))
    assert total == g.psi_h(h, 20) == g.psi_h_closed(h, 20)


# deviations ------------------------------------------------------------------

@pytest.mark.parametrize("h", range(5))
def test_deviation_H_matches_oracle(h):
    H = g.deviation_H(h, ORDER)
    assert H[0] == 1
    surv = oracle.survival_curve(ORDER, oracle.BarrierSpec.deviation("x", h))
    assert [H[n] for n in range(ORDER + 1)] == surv
    assert H == g.deviation_H_closed(h, ORDER)


def test_deviation_H_monotone_in_h_and_saturates():
    n = 16
    Hs = [g.deviation_H(h, n) for h in range(n + 1)]
    for a, b in zip(Hs, Hs[1:]):
        assert all(x <= y for x, y in zip(a.coeffs, b.coeffs))
    for h in range(n + 1):
        assert Hs[h][h] == 1
        # complement 1/(1-z) - H_h has nonnegative coefficients
        assert all(0 <= c <= 1 for c in Hs[h].coeffs)


@pytest.mark.parametrize("h", range(5))
def test_psi_hat_sum_matches_oracle(h):
    s = g.psi_hat_sum(h, ORDER)
    surv = oracle.survival_curve(ORDER, oracle.BarrierSpec.deviation("y", h))
    assert [s[n] for n in range(ORDER + 1)] == surv
    assert s == g.psi_hat_sum_direct(h, ORDER)


def test_psi_hat_is_folded_probability():
    # psi_hat(h, l) = P(D^y <= h, |S^y| = l), both signs summed for l >= 1
    h, n_max = 3, 14
    series = [g.psi_hat(h, l, n_max) for l in range(h + 1)]
    b = oracle.BarrierSpec.deviation("y", h)
    for n in range(n_max + 1):
        d = oracle.survival_distribution(n, b)
        for l in range(h + 1):
            p = sum((m for v, m in d.mass.items() if abs(v.y) == l), F(0))
            assert series[l][n] == p
    with pytest.raises(ValueError):
        g.psi_hat(2, 3, 5)


# expectations ------------------------------------------------------------------

def test_mean_dist_examples():
    assert g.mean_dist_x_gf(4)[1] == F(1, 2)
    assert g.mean_dist_y_gf(4)[1] == F(1, 2)


def test_mean_dist_matches_oracle_to_40():
    mx, my = g.mean_dist_x_gf(40), g.mean_dist_y_gf(40)
    for n in range(41):
        e = oracle.expectations(n)
        assert mx[n] == e.abs_x and my[n] == e.abs_y


def test_mean_deviation_examples():
    dx, dy = g.mean_deviation_gf("x", 8), g.mean_deviation_gf("y", 8)
    assert dx[1] == F(1, 2)
    assert dy[2] == oracle.deviation_expectation(2, "y") == 1
    assert fr(dx)[:5] == [0, F(1, 2), F(5, 8), F(25, 32), F(111, 128)]
    mx, my = g.mean_dist_x_gf(8), g.mean_dist_y_gf(8)
    assert all(a >= b for a, b in zip(dx.coeffs, mx.coeffs))
    assert all(a >= b for a, b in zip(dy.coeffs, my.coeffs))
    with pytest.raises(ValueError):
        g.mean_deviation_gf("z", 4)


@pytest.mark.parametrize("axis", "xy")
def test_mean_deviation_closed_form(axis):
    assert g.mean_deviation_gf(axis, 24) == g.mean_deviation_gf_closed(axis, 24)


def test_span_examples():
    assert g.span_gf_y(6)[0] == 0 and g.span_gf_x(6)[0] == 0
    for n in range(13):
        assert 2 * g.span_gf_x(12)[n] == oracle.span_expectation(n, "x")
        assert 2 * g.span_gf_y(12)[n] == oracle.span_expectation(n, "y")


@pytest.mark.parametrize("h", [0, 1, 2, 3])
def test_span_tail_y_system_vs_closed(h):
    # the closed form is stated for h >= 2; it also holds at 0 and 1
    assert g.span_tail_y(h, 20, method="system") == g.span_tail_y(h, 20, method="closed")


# exit time --------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_theta_matches_box_survival(n):
    th = g.theta_gf(n, ORDER)
    assert th[0] == 1
    assert [th[k] for k in range(ORDER + 1)] == oracle.exit_time_tails(n, "inf", ORDER)
    assert th == g.theta_gf_closed(n, ORDER)


def test_theta_1_sums_to_exit_time():
    import math

    th = g.theta_gf(1, 200)
    assert math.isclose(math.fsum(th.to_floats()), 30 / 7, rel_tol=1e-14)


# catalog and invariants ------------------------------------------------------------

def test_catalog_entry_rejects_mixed_variables():
    a = g.GFCatalogEntry("a", "z", PowerSeries.one(3))
    b = g.GFCatalogEntry("b", "v", PowerSeries.one(3))
    with pytest.raises(ValueError):
        a + b


def test_probability_gfs_in_unit_interval():
    for s in [g.green_G(20), g.deviation_H(2, 20), g.psi_hat_sum(2, 20), g.theta_gf(2, 20), g.excursion_E(20)]:
        assert all(0 <= c <= 1 for c in s.coeffs)
    for s in [g.mean_dist_x_gf(20), g.mean_deviation_gf("y", 20), g.span_gf_x(20)]:
        assert all(c >= 0 for c in s.coeffs)


def test_solve_tridiagonal_small():
    one = PowerSeries.one(4)
    z = PowerSeries.variable(4)
    x = g.solve_tridiagonal([None, z], [one, one], [z, None], [one, one * 0])
    # [[1, z], [z, 1]] x = (1, 0)
    assert x[0] + z * x[1] == one
    assert z * x[0] + x[1] == PowerSeries.zero(4)
