"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the package: coordinates, lines and covers are built
from scratch with plain tuples and sets.
"""

import itertools
from collections import Counter

# GF(4) = {0, 1, w, w+1} encoded 0..3 with w^2 = w + 1
GF4_ADD = [[a ^ b for b in range(4)] for a in range(4)]
GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


def arithmetic(q):
    if q == 4:
        return (lambda a, b: GF4_ADD[a][b]), (lambda a, b: GF4_MUL[a][b])
    assert all(q % d for d in range(2, q)), "prime orders or q=4 only"
    return (lambda a, b: (a + b) % q), (lambda a, b: (a * b) % q)


def affine_classes(q):
    """Parallel classes of AG(2,q) as lists of frozensets of (x, y)."""
    add, mul = arithmetic(q)
    classes = []
    for m in range(q):
        classes.append([frozenset((x, add(mul(m, x), c)) for x in range(q)) for c in range(q)])
    classes.append([frozenset((c, y) for y in range(q)) for c in range(q)])
    return classes


def size_histogram(q):
    """Counter of (size, largest knot) over every selection."""
    hist = Counter()
    for lines in itertools.product(*affine_classes(q)):
        knots = Counter()
        for ln in lines:
            knots.update(ln)
        hist[(len(knots), max(knots.values()))] += 1
    return hist


def no_root(coeffs, p):
    """coeffs high-to-low; True iff the polynomial has no root in GF(p)."""
    for x in range(p):
        v = 0
        for c in coeffs:
            v = (v * x + c) % p
        if v == 0:
            return False
    return True


def first_rootless_monic(p, e):
    for tail in itertools.product(range(p), repeat=e):
        coeffs = (1,) + tail
        if no_root(coeffs, p):
            return coeffs
    return None
