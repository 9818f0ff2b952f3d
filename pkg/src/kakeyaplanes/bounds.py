"""Exact bound functions for large Kakeya sets.

With ``kappa = sqrt(q + 1/4) - 1/2`` (the positive root of
``kappa**2 + kappa = q``):

* ``f_q(k) = q*k / (q + 1 - k)`` lower-bounds the uncovered points when the
  largest knot is a ``(q+1-k)``-knot, from the counting identities;
* ``g_q(k) = k*(q - k)`` is the second lower bound, from the lines through
  the knot that are not chosen;
* ``h_q(k) = k*q - k*(k+1)/2`` is the matching upper bound.

Sizes above ``q**2 - min(g_q(q - ceil kappa), f_q(q - floor kappa))`` fall in
one of the intervals ``[q**2 - h_q(k), q**2 - g_q(k)]`` with ``k < ceil kappa``.
Everything here is exact: rationals via :class:`fractions.Fraction` and
numbers ``a + b*sqrt(d)`` via :class:`QuadraticIrrational`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, NotASquareOrder


class QuadraticIrrational:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and a fixed integer ``d >= 0``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _coerce(self, other):
        if isinstance(other, QuadraticIrrational):
            if other.d != self.d:
                raise ValueError("radicands differ")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticIrrational(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticIrrational(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticIrrational(self.a * o.a + self.b * o.b * self.d,
                                   self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticIrrational(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            # d is a perfect square and o is rational zero or a + b*r with a = -b*r
            r = math.isqrt(self.d)
            if r * r == self.d and o.a + o.b * r != 0:
                return self * QuadraticIrrational(1 / (o.a + o.b * r), 0, self.d)
            raise ZeroDivisionError("division by zero")
        return self * o.conjugate() * QuadraticIrrational(1 / n, 0, self.d)

    def __rtruediv__(self, other):
        return QuadraticIrrational(other, 0, self.d) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or self.d == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __floor__(self) -> int:
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    def __ceil__(self) -> int:
        n = math.floor(self)
        return n if self == n else n + 1

    def integer_triple(self) -> tuple[int, int, int]:
        """``(a, b, c)`` with value ``(a + b*sqrt(d)) / c``, ``c > 0`` minimal."""
        c = math.lcm(self.a.denominator, self.b.denominator)
        return int(self.a * c), int(self.b * c), c

    def __repr__(self):
        return f"QuadraticIrrational({self.a}, {self.b}, {self.d})"

    def __str__(self):
        a, b, c = self.integer_triple()
        return f"({a} + {b}*sqrt({self.d}))/{c}"


Number = int | Fraction | QuadraticIrrational


def kappa(q: int) -> QuadraticIrrational:
    """``sqrt(q + 1/4) - 1/2 = (sqrt(4q+1) - 1) / 2``."""
    return QuadraticIrrational(Fraction(-1, 2), Fraction(1, 2), 4 * q + 1)


def _check_domain(q: int, k) -> None:
    if k < 0 or k > q:
        raise DomainError(f"k={k} outside [0, {q}]")


def _rational(k):
    return Fraction(k) if isinstance(k, int) else k


def f_q(q: int, k: Number):
    """``q*k / (q + 1 - k)``; exact for rational or quadratic-irrational ``k``."""
    _check_domain(q, k)
    k = _rational(k)
    return q * k / (q + 1 - k)


def g_q(q: int, k: Number):
    _check_domain(q, k)
    k = _rational(k)
    return k * (q - k)


def h_q(q: int, k: int) -> int:
    """``k*q - k*(k+1)/2``."""
    _check_domain(q, k)
    return k * q - k * (k + 1) // 2


def kappa_floor(q: int) -> int:
    """Largest ``n`` with ``n*n + n <= q``."""
    return (math.isqrt(4 * q + 1) - 1) // 2


def kappa_ceil(q: int) -> int:
    n = kappa_floor(q)
    return n if n * n + n == q else n + 1


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _cutoff(q: int, bound) -> int:
    """Smallest integer strictly above ``q**2 - bound``."""
    return math.floor(q * q - bound) + 1


@dataclass
class CorollaryBound:
    q: int
    value: QuadraticIrrational  # sizes strictly above this are classified
    cutoff: int

    def as_dict(self) -> dict:
        a, b, c = self.value.integer_triple()
        return {"value": str(self.value), "a": a, "b": b, "c": c, "d": self.value.d,
                "approx": float(self.value), "cutoff": self.cutoff}


def corollary_threshold(q: int) -> CorollaryBound:
    """``q**2 - ((q+1)*sqrt(q + 1/4) - (3q+1)/2)`` and its integer cutoff."""
    if q < 4:
        raise DomainError("the simplified threshold needs q >= 4")
    value = QuadraticIrrational(q * q + Fraction(3 * q + 1, 2), -Fraction(q + 1, 2), 4 * q + 1)
    return CorollaryBound(q, value, math.floor(value) + 1)


def square_threshold(q: int) -> int:
    """``q**2 - q*sqrt(q) + q`` for square ``q >= 9``."""
    if not _is_square(q):
        raise NotASquareOrder(f"q={q} is not a perfect square")
    if q < 9:
        raise DomainError("needs q >= 9")
    r = math.isqrt(q)
    return q * q - q * r + q


def admissible_intervals(q: int) -> list[tuple[int, int, int]]:
    """``(k, lo, hi)`` for ``0 <= k < ceil(kappa)``."""
    return [(k, q * q - h_q(q, k), q * q - k * (q - k)) for k in range(kappa_ceil(q))]


@dataclass
class BoundsProfile:
    q: int
    kappa_floor: int
    kappa_ceil: int
    theorem_min: Fraction
    theorem_size_cutoff: int
    corollary: CorollaryBound | None
    square_cutoff: int | None
    intervals: list = field(default_factory=list)

    @property
    def corollary_cutoff(self) -> int | None:
        return None if self.corollary is None else self.corollary.cutoff

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "kappa": str(kappa(self.q)),
            "kappa_approx": float(kappa(self.q)),
            "kappa_floor": self.kappa_floor,
            "kappa_ceil": self.kappa_ceil,
            "theorem_min": str(self.theorem_min),
            "theorem_size_cutoff": self.theorem_size_cutoff,
            "corollary": None if self.corollary is None else self.corollary.as_dict(),
            "corollary_cutoff": self.corollary_cutoff,
            "square_cutoff": self.square_cutoff,
            "intervals": [{"k": k, "lo": lo, "hi": hi} for k, lo, hi in self.intervals],
        }


def theorem_threshold(q: int) -> BoundsProfile:
    if q < 2:
        raise DomainError("q must be at least 2")
    lo, hi = kappa_floor(q), kappa_ceil(q)
    tmin = min(g_q(q, q - hi), f_q(q, q - lo))
    return BoundsProfile(
        q=q,
        kappa_floor=lo,
        kappa_ceil=hi,
        theorem_min=tmin,
        theorem_size_cutoff=_cutoff(q, tmin),
        corollary=corollary_threshold(q) if q >= 4 else None,
        square_cutoff=square_threshold(q) if q >= 9 and _is_square(q) else None,
        intervals=admissible_intervals(q),
    )


def prior_classification(q: int, size: int) -> list[int] | None:
    """The older large-set result (orders q > 12): sizes at least
    ``q**2 - 3q + 9`` equal ``q**2 - k*q + k**2`` for some k in 0..3.

    Returns the admissible ``k`` (possibly empty) or None when it does not apply.
    """
    if q <= 12 or size < q * q - 3 * q + 9:
        return None
    return [k for k in range(4) if size == q * q - k * q + k * k]


@dataclass(frozen=True)
class Verdict:
    status: str  # "conforms" | "unclassified" | "violates"
    size: int
    k: int | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "size": self.size, "k": self.k, "detail": self.detail}


def classify(q: int, size: int, k_observed: int | None = None, profile: BoundsProfile | None = None) -> Verdict:
    if not 1 <= size <= q * q:
        raise DomainError(f"size {size} outside [1, {q * q}]")
    profile = profile or theorem_threshold(q)
    if size < profile.theorem_size_cutoff:
        return Verdict("unclassified", size, None, f"size <= q^2 - {profile.theorem_min}")
    ks = [k for k, lo, hi in profile.intervals if lo <= size <= hi]
    if len(ks) != 1:
        return Verdict("violates", size, None, f"size lies in {len(ks)} admissible intervals")
    k = ks[0]
    if k_observed is not None and k_observed != k:
        return Verdict("violates", size, k, f"largest knot gives k={k_observed}, interval gives k={k}")
    return Verdict("conforms", size, k)


def gap_predicates(q: int, k: int) -> tuple[bool, bool]:
    """Whether the intervals for ``k`` and ``k + 1`` are disjoint, and whether
    some integer lies strictly between them.

    ``g_q(k+1) - h_q(k) = q - (k+1)(k+2)/2``, so disjointness is
    ``(2k+3)**2 < 8q + 1`` and a strict gap is ``(2k+3)**2 < 8q - 7``.
    """
    if not 0 <= k < q:
        raise DomainError(f"k={k} outside [0, {q})")
    s = (2 * k + 3) ** 2
    return s < 8 * q + 1, s < 8 * q - 7


def bounds_table(q: int) -> list[dict]:
    """f, g, h and interval endpoints for each integer k in [0, q]."""
    rows = []
    for k in range(q + 1):
        rows.append({
            "k": k,
            "f_q": f_q(q, k),
            "g_q": g_q(q, k),
            "h_q": h_q(q, k),
            "lo": q * q - h_q(q, k),
            "hi": q * q - k * (q - k),
        })
    return rows


@dataclass
class LemmaReport:
    q: int
    items: dict = field(default_factory=dict)  # item -> "pass" | "fail" | "skipped"

    @property
    def ok(self) -> bool:
        return all(v != "fail" for v in self.items.values())


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def lemma_checks(q: int, denominator: int = 10) -> LemmaReport:
    """Check the properties of f_q and g_q on the grid ``k = j/denominator``.

    (i) f_q strictly increasing; (ii) g_q symmetric about q/2;
    (iii) f_q(q - kappa) = g_q(q - kappa), and f_q <= g_q below q - kappa;
    (iv) g_q(s) <= g_q(k) for k in [s, q - s], s <= q/2;
    (v) g_q(q - kappa) <= min(g_q(q - ceil kappa), f_q(q - floor kappa)), q >= 4.
    """
    rep = LemmaReport(q)
    n = denominator * q
    grid = [Fraction(j, denominator) for j in range(n + 1)]
    fv = [f_q(q, k) for k in grid]
    gv = [g_q(q, k) for k in grid]

    rep.items["i"] = _verdict(all(a < b for a, b in zip(fv, fv[1:])))
    rep.items["ii"] = _verdict(all(gv[j] == g_q(q, q - grid[j]) for j in range(n + 1)))

    kap = kappa(q)
    edge = q - kap
    ok = f_q(q, edge) == g_q(q, edge)
    ok = ok and all(fv[j] <= gv[j] for j in range(n + 1) if grid[j] <= edge)
    rep.items["iii"] = _verdict(ok)

    # running minimum of g over the nested grid windows [j, n - j]
    ok = True
    lo = n // 2
    window_min = min(gv[lo], gv[n - lo])
    for j in range(lo, -1, -1):
        window_min = min(window_min, gv[j], gv[n - j])
        if grid[j] <= Fraction(q, 2) and gv[j] > window_min:
            ok = False
            break
    rep.items["iv"] = _verdict(ok)

    if q >= 4:
        rhs = min(g_q(q, q - kappa_ceil(q)), f_q(q, q - kappa_floor(q)))
        rep.items["v"] = _verdict(g_q(q, edge) <= rhs)
    else:
        rep.items["v"] = "skipped"
    return rep
