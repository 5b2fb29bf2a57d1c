"""
Exit times and the walk dimension
=================================
"""

# %%
import math

from combwalk import genfun, oracle
from combwalk.asymptotics import fit_power_law

for r in (1, 2, 3, 5):
    print(r, "inf:", oracle.exit_time_expectation(r, "inf"), " 1-norm:", oracle.exit_time_expectation(r, 1))

# %%
# The tail series of T_n sums to the same numbers.
th = genfun.theta_gf(2, 400)
print(math.fsum(th.to_floats()), float(oracle.exit_time_expectation(2, "inf")))

# %%
# E[T_n] / n^2 drifts to 1: walk dimension 2.
pts = []
for r in (8, 16, 32, 64, 128):
    t = float(oracle.exit_time_expectation(r, "inf", exact=True))
    pts.append((r, t))
    print(r, t / r**2)
print("fitted exponent:", fit_power_law(pts).alpha)
