"""
Monte Carlo: the n^(1/2) and n^(1/4) laws
=========================================

Sizes here are smaller than the acceptance runs so the script takes
well under a minute.
"""

# %%
from combwalk.asymptotics import constant, fit_power_law
from combwalk.simulate import WalkConfig, simulate_walks

n = 4000
batch = simulate_walks(WalkConfig(n, 20000, seed=1))
for q in ("abs_y", "dev_y", "span_y"):
    est = batch.estimate(q).scaled(n**-0.5)
    print(f"{q}: {est.mean:.4f} +- {est.stderr:.4f}   limit {constant(q).value:.4f}")

# %%
# Horizontal statistics from checkpoints of the same walks.
ns = tuple(2**k for k in range(8, 16))
batch = simulate_walks(WalkConfig(ns[-1], 4000, seed=2, checkpoints=ns))
for q in ("abs_x", "dev_x", "span_x"):
    fit = fit_power_law([(t, batch.estimate(q, t).mean) for t in ns])
    print(f"{q}: alpha {fit.alpha:.3f}, C {fit.C:.3f} (limit {constant(q).value:.3f})")

# %%
# Loops L_n count horizontal moves; L_n / sqrt(n) is close to |N(0,1)|.
loops = batch.field("loops", ns[-1]) / ns[-1] ** 0.5
print("mean L/sqrt(n):", loops.mean(), "vs sqrt(2/pi) = 0.7979")
