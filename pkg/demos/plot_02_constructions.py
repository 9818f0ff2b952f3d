"""
Named Kakeya sets
=================

Pencils, near-pencils, dual (hyper)ovals and the Baer-subplane example.
"""

# %%
from kakeyaplanes.constructions import FAMILIES, ConstructionSpec, applicable, expected_size
from kakeyaplanes.kakeya import analyze

for q in (4, 5, 9):
    for family in FAMILIES:
        if applicable(family, q):
            rec = analyze(ConstructionSpec(family, q).build())
            print(f"q={q:2d} {family:20s} size={rec['size']:3d} expected={expected_size(family, q):3d} "
                  f"largest knot={rec['max_knot']}")

# %%
# The Baer example
# ----------------
# q lines from a Baer subplane plus one line m through the tangent point.
# Every knot has size sqrt(q) or sqrt(q)+1, which is what makes this set sit
# exactly at the square-order threshold.
from kakeyaplanes.constructions import baer_configuration
from kakeyaplanes.gf import field_of_order
from kakeyaplanes.kakeya import cover, knot_spectrum

cfg = baer_configuration(field_of_order(9))
ks = cover(cfg.selection)
print("size", ks.size, "spectrum", knot_spectrum(ks).x)

# %%
# Every choice of m gives the same size.
sizes = [cover(baer_configuration(field_of_order(9), m).selection).size for m in range(4)]
print(sizes)
