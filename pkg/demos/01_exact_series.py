"""
Exact generating functions on the comb
======================================

Every quantity below is a truncated power series with rational
coefficients, checked against brute-force enumeration.
"""

# %%
from combwalk import genfun, oracle

order = 12
G = genfun.green_G(order)
print("return probabilities p_n(0,0):", [str(c) for c in G.to_fractions()])
print("oracle                       :", [str(oracle.transition_probability(n, 0, 0)) for n in range(order + 1)])

# %%
# Mean horizontal distance.  The GF has a factor 2 for the two signs of k.
mx = genfun.mean_dist_x_gf(order)
for n in (1, 2, 5, 12):
    print(n, mx[n], oracle.expectations(n).abs_x)

# %%
# Maximal deviation: P(D_n^x <= h) for a few h.
for h in range(4):
    H = genfun.deviation_H(h, 8)
    print(f"h={h}", [str(c) for c in H.to_fractions()])

# %%
# The v-substitution: tridiagonal determinants two ways.
for i in (3, 10):
    print(i, genfun.a_det(i, 20) == genfun.a_det_closed(i, 20))

# %%
# Expected maximal span, both axes, against the barrier DP.
sx, sy = genfun.span_gf_x(10), genfun.span_gf_y(10)
for n in (4, 10):
    print(n, 2 * sx[n], oracle.span_expectation(n, "x"), 2 * sy[n], oracle.span_expectation(n, "y"))
