import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from combwalk import oracle as o
from combwalk.oracle import BarrierSpec, CombVertex, StateDistribution


def test_step_from_origin():
    d = o.step(StateDistribution.point())
    assert d.mass == {CombVertex(1, 0): F(1, 4), CombVertex(-1, 0): F(1, 4),
                      CombVertex(0, 1): F(1, 4), CombVertex(0, -1): F(1, 4)}
    assert d.step == 1


def test_step_on_tooth():
    d = o.step(StateDistribution.point((0, 1)))
    assert d.mass == {CombVertex(0, 0): F(1, 2), CombVertex(0, 2): F(1, 2)}
    assert d.total() == 1


def test_neighbours_respect_comb_edges():
    assert sorted(v for v, _ in o.neighbours((3, 2))) == [(3, 1), (3, 3)]
    assert len(o.neighbours((3, 0))) == 4


@given(st.integers(0, 14))
def test_mass_support_and_symmetry(n):
    d = o.position_distribution(n)
    assert d.total() == 1
    assert all(abs(v.x) + abs(v.y) <= n for v in d.mass)
    for v, m in d.mass.items():
        assert d[(-v.x, v.y)] == m
        assert d[(v.x, -v.y)] == m


def test_step_agrees_with_cached_dp():
    d = StateDistribution.point()
    for n in range(1, 10):
        d = o.step(d)
        assert d.mass == o.position_distribution(n).mass


def test_exact_limit():
    with pytest.raises(ValueError):
        o.position_distribution(o.EXACT_MAX_STEPS + 1)
    with pytest.raises(ValueError):
        o.position_distribution(-1)


def test_barrier_validation():
    with pytest.raises(ValueError):
        BarrierSpec(x_min=1)
    with pytest.raises(ValueError):
        BarrierSpec.deviation("x", -1)
    b = BarrierSpec.ball(2, 1)
    assert b.contains(1, 1) and not b.contains(2, 1)
    assert BarrierSpec.ball(2, "inf").contains(2, 2)


def test_survival_examples():
    for b in [BarrierSpec.deviation("x", 0), BarrierSpec.one_sided("y", 3), BarrierSpec.ball(2, "inf")]:
        assert o.survival_probability(0, b) == 1
    assert o.survival_probability(2, BarrierSpec.deviation("y", 0)) == F(1, 4)


def test_expectations():
    e0, e1 = o.expectations(0), o.expectations(1)
    assert (e0.abs_x, e0.abs_y, e0.norm1, e0.norm_inf) == (0, 0, 0, 0)
    assert (e1.abs_x, e1.abs_y, e1.norm1, e1.norm_inf) == (F(1, 2), F(1, 2), 1, 1)
    for n in range(12):
        e = o.expectations(n)
        assert e.norm1 == e.abs_x + e.abs_y
        assert max(e.abs_x, e.abs_y) <= e.norm_inf <= e.norm1


def test_deviation_and_span_values():
    assert o.deviation_expectation(1, "x") == F(1, 2)
    assert o.deviation_expectation(2, "y") == 1
    # frozen regression values from the one-sided-barrier DP
    assert o.span_expectation(1, "x") == F(1, 2)
    assert o.span_expectation(2, "x") == F(5, 8)
    assert o.span_expectation(2, "y") == 1
    assert o.span_expectation(0, "y") == 0
    for n in range(8):
        for axis in "xy":
            dev = o.deviation_expectation(n, axis)
            span = o.span_expectation(n, axis)
            assert dev <= span <= 2 * dev


def test_exit_time_values():
    # the infinity-ball of radius 1 contains the corners (+-1, +-1); see ledger
    assert o.exit_time_expectation(1, "inf") == F(30, 7)
    assert o.exit_time_expectation(1, 1) == F(16, 5)
    assert o.exit_time_expectation(2, "inf") == F(363, 37)
    assert o.exit_time_expectation(3, "inf") == F(4500, 257)


@pytest.mark.parametrize("r", [1, 2, 3, 5, 8])
def test_exit_time_norm_ordering_and_float_agreement(r):
    ti = o.exit_time_expectation(r, "inf", exact=True)
    t1 = o.exit_time_expectation(r, 1, exact=True)
    assert ti >= t1
    for norm, t in (("inf", ti), (1, t1)):
        f = o.exit_time_expectation(r, norm, exact=False)
        assert math.isclose(f, float(t), rel_tol=1e-8)


def test_exit_time_mode_selection():
    assert isinstance(o.exit_time_expectation(o.EXACT_MAX_RADIUS, "inf"), F)
    big = o.exit_time_expectation(o.EXACT_MAX_RADIUS + 15, "inf")
    assert isinstance(big, float)
    forced = o.exit_time_expectation(o.EXACT_MAX_RADIUS + 15, "inf", exact=True)
    assert math.isclose(big, float(forced), rel_tol=1e-8)
    with pytest.raises(ValueError):
        o.exit_time_expectation(0, "inf")


def test_exit_time_equals_tail_sum():
    tails = o.exit_time_tails(1, "inf", 120)
    assert tails[0] == 1
    assert math.isclose(math.fsum(float(t) for t in tails), 30 / 7, rel_tol=1e-15)
    tails = o.exit_time_tails(2, 1, 200)
    assert math.isclose(math.fsum(float(t) for t in tails), float(o.exit_time_expectation(2, 1)), rel_tol=1e-12)


def test_path_counts():
    assert o.path_counts_1d(1, 1, 0, 2) == 2
    for l in range(-3, 4):
        assert o.path_counts_1d(3, 3, l, abs(l)) == 1
    assert o.path_counts_1d(2, 2, 1, 2) == 0  # parity
    with pytest.raises(ValueError):
        o.path_counts_1d(1, 1, 2, 4)


def test_float_sequences_match_exact():
    fs = o.float_sequences(20)
    for n in range(21):
        e = o.expectations(n)
        assert fs.abs_x[n] == pytest.approx(float(e.abs_x), rel=1e-13, abs=1e-15)
        assert fs.abs_y[n] == pytest.approx(float(e.abs_y), rel=1e-13, abs=1e-15)
        for axis in "xy":
            assert getattr(fs, f"dev_{axis}")[n] == pytest.approx(float(o.deviation_expectation(n, axis)), rel=1e-13, abs=1e-15)
            assert getattr(fs, f"span_{axis}")[n] == pytest.approx(float(o.span_expectation(n, axis)), rel=1e-13, abs=1e-15)
    assert fs.leak < 1e-15
