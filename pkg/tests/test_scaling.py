import math

import numpy as np
import pytest

from combwalk.scaling import (
    KSResult,
    ks_against,
    ks_two_sample,
    reference_abs_normal,
    reference_brownian_at_local_time,
    reference_normal,
    sample_snapshot_arrays,
    sample_snapshots,
    sign_correlation,
)
from combwalk.simulate import Estimate

SQRT_2_PI = math.sqrt(2 / math.pi)
# E|S_n^y| / sqrt(n) at n = 10^4 from a float DP of the vertical projection
ABS_Y_1E4 = 0.792903


def test_snapshots_shape_and_scaling():
    snaps = sample_snapshots(400, 5, (0.25, 0.5, 1.0), seed=3)
    assert len(snaps) == 5 and all(len(s) == 3 for s in snaps)
    assert [s.t for s in snaps[0]] == [0.25, 0.5, 1.0]
    a = sample_snapshot_arrays(400, 5, (0.25, 0.5, 1.0), seed=3)
    assert snaps[2][1].y_scaled == a.y_scaled[2, 1]
    x = a.x_scaled * 400**0.25
    assert np.allclose(x, np.rint(x))
    assert np.all(a.loops_scaled >= 0)
    # loop counts are nondecreasing in t
    assert np.all(np.diff(a.loops_scaled, axis=1) >= 0)


def test_snapshots_reproducible_and_validated():
    a = sample_snapshot_arrays(300, 20, (0.5, 1.0), seed=8)
    b = sample_snapshot_arrays(300, 20, (0.5, 1.0), seed=8)
    assert np.array_equal(a.x_scaled, b.x_scaled) and np.array_equal(a.loops_scaled, b.loops_scaled)
    with pytest.raises(ValueError):
        sample_snapshot_arrays(0, 10)
    with pytest.raises(ValueError):
        sample_snapshot_arrays(10, 10, (0.0,))
    with pytest.raises(ValueError):
        sample_snapshot_arrays(10, 10, ())


def test_mean_abs_y_at_1e4():
    a = sample_snapshot_arrays(10**4, 10**5, (1.0,), seed=101)
    est = Estimate.from_samples(np.abs(a.column("y_scaled")))
    assert est.within(ABS_Y_1E4, 3)
    assert abs(est.mean / SQRT_2_PI - 1) < 0.02


def test_sign_correlation_vanishes():
    a = sample_snapshot_arrays(10**4, 10**4, (1.0,), seed=5)
    est = sign_correlation(a.column("x_scaled"), a.column("y_scaled"))
    assert abs(est.mean) <= 3 * est.stderr + 1e-12


def test_reference_samplers():
    rng = np.random.default_rng(12)
    assert Estimate.from_samples(reference_abs_normal(rng, 10**6)).within(SQRT_2_PI, 3)
    z = reference_normal(rng, 10**6)
    assert abs(z.mean()) < 0.005
    r = reference_brownian_at_local_time(rng, 10**6)
    assert Estimate.from_samples(r).within(0.0, 3)
    # Var = E[L] with L ~ |N(0,1)|
    assert Estimate.from_samples(r * r).within(SQRT_2_PI, 3)
    assert isinstance(reference_normal(rng), float)


def test_path_sampler_agrees_with_fast_sampler():
    rng = np.random.default_rng(2)
    slow = reference_brownian_at_local_time(rng, 5000, method="path", steps=2000)
    fast = reference_brownian_at_local_time(rng, 50000)
    assert ks_two_sample(slow, fast).statistic < 0.05
    with pytest.raises(ValueError):
        reference_brownian_at_local_time(rng, 10, method="other")


def test_ks_basics():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(1000)
    r = ks_two_sample(x, x)
    assert isinstance(r, KSResult) and r.statistic == 0 and r.n_samples == 1000
    assert ks_against(rng.standard_normal(10**4), "normal").statistic < 0.02
    assert ks_against(np.abs(rng.standard_normal(10**4)), "abs_normal").statistic < 0.02
    assert ks_against(rng.standard_normal(10**4) + 1, "normal").statistic > 0.3
    with pytest.raises(ValueError):
        ks_against(x[:99], "normal")
    with pytest.raises(ValueError):
        ks_two_sample(x, x[:50])
    with pytest.raises(ValueError):
        ks_against(x, "uniform")


def test_ks_statistic_in_unit_interval():
    rng = np.random.default_rng(4)
    for _ in range(5):
        r = ks_two_sample(rng.standard_normal(200), rng.exponential(size=300))
        assert 0 <= r.statistic <= 1


def test_loops_and_vertical_marginals_at_moderate_n():
    a = sample_snapshot_arrays(2 * 10**4, 4000, (1.0,), seed=6)
    assert ks_against(a.column("y_scaled"), "normal").statistic < 0.05
    assert ks_against(a.column("loops_scaled"), "abs_normal").statistic < 0.05
