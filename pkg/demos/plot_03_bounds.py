"""
Size thresholds
===============

Above a threshold near q^2 - q*sqrt(q), the size of a Kakeya set is pinned to
a short interval that depends only on its largest knot.
"""

# %%
from kakeyaplanes import bounds as bnd

for q in (16, 17, 25):
    prof = bnd.theorem_threshold(q)
    print(q, prof.kappa_floor, prof.kappa_ceil, prof.theorem_min, prof.theorem_size_cutoff,
          prof.corollary_cutoff, prof.square_cutoff)

# %%
# Intervals and gaps
# ------------------
# Interval k holds the sizes of sets whose largest knot is a (q+1-k)-knot.
for row in bnd.bounds_table(17)[:6]:
    print(row)

# %%
# kappa is a quadratic irrational; comparisons against it are exact.
k = bnd.kappa(17)
print(k, float(k), bnd.f_q(17, 17 - k) == bnd.g_q(17, 17 - k))

# %%
# The auxiliary inequalities hold across a range of orders.
print(all(bnd.lemma_checks(q).ok for q in range(4, 40)))

# %%
# Classify a few sizes at q = 17.
for size in (289, 273, 260, 258, 250, 230):
    print(size, bnd.classify(17, size).as_dict())
