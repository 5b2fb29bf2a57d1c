"""
The joint scaling limit at t = 1
================================
"""

# %%
import numpy as np

from combwalk import scaling

snaps = scaling.sample_snapshot_arrays(10**5, 10**4, (0.25, 0.5, 1.0), seed=3)
rng = np.random.default_rng(0)

# Y_nt / sqrt(n) should have standard deviation sqrt(t)
for t in snaps.grid:
    print(f"t={t}: std {snaps.column('y_scaled', t).std():.3f} vs {np.sqrt(t):.3f}")
y = scaling.ks_against(snaps.column("y_scaled"), "normal")
print("KS(Y/sqrt(n), N(0,1)) =", round(y.statistic, 4))

# %%
loops = scaling.ks_against(snaps.column("loops_scaled"), "abs_normal")
x = scaling.ks_two_sample(snaps.column("x_scaled"), scaling.reference_brownian_at_local_time(rng, 10**5))
print("KS(L/sqrt(n), |N|) =", round(loops.statistic, 4))
print("KS(X/n^(1/4), sqrt|N| N') =", round(x.statistic, 4))

# %%
# Text histogram of X/n^(1/4): heavier centre than a Gaussian.
h, edges = np.histogram(snaps.column("x_scaled"), bins=15, range=(-3, 3))
for c, e in zip(h, edges):
    print(f"{e:+.1f} {'#' * (c // 40)}")

# %%
corr = scaling.sign_correlation(snaps.column("x_scaled"), snaps.column("y_scaled"))
print("E[sign x sign y] =", round(corr.mean, 4), "+-", round(corr.stderr, 4))
