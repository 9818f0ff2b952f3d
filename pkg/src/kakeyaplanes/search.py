"""Exhaustive and sampled enumeration of Kakeya selections.

Exhaustive mode walks every selection with an odometer (last class
fastest), updating per-point counts for one line swap per step.  The space
is cut into contiguous index ranges; each worker returns a histogram over
(size, largest knot), the first index seen per size, and counters for the
counting identities and the three inequalities.  Merging is a sum and a
minimum, so the report does not depend on the number of workers.

Sampled mode draws selections with SplitMix64::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Sample ``i`` gets its own generator seeded with output ``i`` of a master
generator seeded with ``seed``; class choices are drawn in class order by
rejection (reject outputs at or above the largest multiple of the range).
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .bounds import BoundsProfile, classify, theorem_threshold
from .errors import BudgetExceeded
from .kakeya import LineSelection, cover, knot_spectrum, counting_identities, max_knot
from .plane import AffinePlane

DEFAULT_BUDGET = 2**31
MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def budget_from_env() -> int:
    return int(os.environ.get("KAKEYA_BUDGET", DEFAULT_BUDGET))


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next()
            if r < limit:
                return r % n


def sample_stream(seed: int, i: int) -> SplitMix64:
    master = SplitMix64((seed + i * GAMMA) & MASK64)
    return SplitMix64(master.next())


@dataclass
class SearchSpace:
    """Candidate lines per class; a class with radix 1 is held fixed."""

    plane: AffinePlane
    options: np.ndarray
    radix: np.ndarray
    reduced: bool

    @property
    def size(self) -> int:
        return int(np.prod([int(r) for r in self.radix], dtype=object))

    @property
    def orbit_size(self) -> int:
        return self.plane.q**2 if self.reduced else 1

    def selection(self, digits) -> LineSelection:
        return LineSelection(self.plane, tuple(int(self.options[c, d]) for c, d in enumerate(digits)))

    def digits(self, idx: int) -> list[int]:
        out = []
        for r in reversed(self.radix.tolist()):
            idx, d = divmod(idx, r)
            out.append(d)
        return out[::-1]


def search_space(plane: AffinePlane, reduce: bool = False) -> SearchSpace:
    """All selections, or with ``reduce`` one per translation orbit.

    Translations act freely on selections and preserve every class, so
    each orbit has exactly one member whose class-0 and class-q lines both
    pass through point 0.
    """
    q = plane.q
    options = plane.classes.copy()
    radix = np.full(q + 1, q, dtype=np.int64)
    reduced = bool(reduce and plane.translation)
    if reduced:
        for c in (0, q):
            options[c, 0] = plane.class_point_line[c, 0]
            radix[c] = 1
    return SearchSpace(plane, np.ascontiguousarray(options), radix, reduced)


@dataclass
class _Partial:
    hist: np.ndarray
    witness: np.ndarray
    bad: np.ndarray

    @classmethod
    def empty(cls, q: int) -> "_Partial":
        return cls(np.zeros((q * q + 1, q + 2), np.int64), np.full(q * q + 1, -1, np.int64),
                   np.zeros(4, np.int64))

    def merge(self, other: "_Partial") -> "_Partial":
        w = np.where(self.witness < 0, other.witness,
                     np.where(other.witness < 0, self.witness, np.minimum(self.witness, other.witness)))
        return _Partial(self.hist + other.hist, w, self.bad + other.bad)


def _scan_chunk(lines, options, radix, lo, hi) -> _Partial:
    part = _Partial.empty(lines.shape[1])
    _kernel.scan_range(lines, options, radix, lo, hi, part.hist, part.witness, part.bad, -1)
    return part


def _list_chunk(lines, options, rows, first) -> _Partial:
    part = _Partial.empty(lines.shape[1])
    _kernel.scan_list(lines, options, rows, first, part.hist, part.witness, part.bad)
    return part


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    edges = [total * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]


def _run(fn, tasks, jobs: int) -> _Partial:
    if jobs <= 1 or len(tasks) <= 1:
        results = [fn(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, *zip(*tasks)))
    out = results[0]
    for r in results[1:]:
        out = out.merge(r)
    return out


def sample_digits(space: SearchSpace, n: int, seed: int) -> np.ndarray:
    rows = np.zeros((n, len(space.radix)), dtype=np.int64)
    for i in range(n):
        rng = sample_stream(seed, i)
        rows[i] = [rng.below(int(r)) if r > 1 else 0 for r in space.radix]
    return rows


@dataclass
class SpectrumReport:
    q: int
    mode: str  # "exhaustive" | "sample"
    reduced: bool
    orbit_size: int
    evaluated: int
    attained: dict  # size -> count (per orbit representative when reduced)
    witnesses: dict  # size -> tuple of line indices
    max_knots: dict  # size -> sorted list of largest-knot values
    knot_counts: dict  # (size, largest knot) -> count
    inequality_failures: dict
    n: int | None = None
    seed: int | None = None
    conformance: list = field(default_factory=list)
    gaps: list = field(default_factory=list)
    threshold_cutoff: int | None = None

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "mode": self.mode,
            "n": self.n,
            "seed": self.seed,
            "reduced": self.reduced,
            "count_unit": "translation_orbit" if self.reduced else ("sample" if self.mode == "sample" else "selection"),
            "orbit_size": self.orbit_size,
            "evaluated": self.evaluated,
            "attained": [{"size": s, "count": c} for s, c in sorted(self.attained.items())],
            "witnesses": {str(s): list(w) for s, w in sorted(self.witnesses.items())},
            "max_knots": {str(s): v for s, v in sorted(self.max_knots.items())},
            "knot_counts": [{"size": s, "max_knot": j, "count": c}
                            for (s, j), c in sorted(self.knot_counts.items())],
            "inequality_failures": self.inequality_failures,
            "theorem_cutoff": self.threshold_cutoff,
            "conformance": self.conformance,
            "gaps": self.gaps,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=1) + "\n"

    @property
    def min_size(self) -> int:
        return min(self.attained)

    @property
    def max_size(self) -> int:
        return max(self.attained)


def _report(space: SearchSpace, part: _Partial, mode: str, evaluated: int,
            keys_to_digits, n=None, seed=None) -> SpectrumReport:
    q = space.plane.q
    attained, witnesses, max_knots, knot_counts = {}, {}, {}, {}
    for size in np.flatnonzero(part.hist.sum(axis=1)):
        size = int(size)
        row = part.hist[size]
        attained[size] = int(row.sum())
        js = [int(j) for j in np.flatnonzero(row)]
        max_knots[size] = js
        for j in js:
            knot_counts[(size, j)] = int(row[j])
        witnesses[size] = space.selection(keys_to_digits(int(part.witness[size]))).chosen
    names = ("identities", "lower_f", "lower_g", "upper_h")
    report = SpectrumReport(
        q=q, mode=mode, reduced=space.reduced, orbit_size=space.orbit_size, evaluated=evaluated,
        attained=attained, witnesses=witnesses, max_knots=max_knots, knot_counts=knot_counts,
        inequality_failures={nm: int(v) for nm, v in zip(names, part.bad)}, n=n, seed=seed,
    )
    _annotate(report, theorem_threshold(q))
    return report


def _annotate(report: SpectrumReport, profile: BoundsProfile) -> None:
    q = report.q
    cutoff = profile.theorem_size_cutoff
    report.threshold_cutoff = cutoff
    report.conformance = []
    for size in sorted(report.attained):
        if size < cutoff:
            continue
        verdicts = [classify(q, size, q + 1 - j, profile) for j in report.max_knots[size]]
        worst = next((v for v in verdicts if v.status != "conforms"), verdicts[0])
        report.conformance.append(worst.as_dict())
    report.gaps = [s for s in range(cutoff, q * q + 1) if s not in report.attained]


def enumerate_selections(plane: AffinePlane, mode: str = "exhaustive", *, n: int = 1000, seed: int = 0,
                         reduce: bool = False, jobs: int = 1, big: bool = False,
                         budget: int | None = None) -> SpectrumReport:
    """Visit every selection (or ``n`` sampled ones) and tabulate sizes.

    Raises BudgetExceeded when the exhaustive space exceeds ``budget``
    evaluations, or when q >= 9 is requested without both ``reduce`` and
    ``big``.
    """
    space = search_space(plane, reduce)
    lines = np.ascontiguousarray(plane.lines)
    budget = budget_from_env() if budget is None else budget
    if mode == "exhaustive":
        total = space.size
        if plane.q >= 9 and not (space.reduced and big):
            raise BudgetExceeded(f"exhaustive search at q={plane.q} needs reduction and the big flag")
        if total > budget:
            raise BudgetExceeded(f"{total} selections exceed the budget of {budget}; "
                                 "sample instead or reduce by symmetry")
        # more chunks than workers keeps them busy; result is chunk-independent
        tasks = [(lines, space.options, space.radix, a, b) for a, b in _chunks(total, 4 * jobs)]
        part = _run(_scan_chunk, tasks, jobs)
        return _report(space, part, "exhaustive", total, space.digits)
    if mode == "sample":
        rows = sample_digits(space, n, seed)
        tasks = [(lines, space.options, rows[a:b], a) for a, b in _chunks(n, 4 * jobs)]
        part = _run(_list_chunk, tasks, jobs)
        return _report(space, part, "sample", n, lambda key: rows[key].tolist(), n=n, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


def find_witness(plane: AffinePlane, target_size: int, *, reduce: bool = False,
                 budget: int | None = None) -> LineSelection | None:
    """First selection in enumeration order with the given size, or None."""
    if not 1 <= target_size <= plane.n_points:
        raise ValueError(f"target size must be in [1, {plane.n_points}]")
    space = search_space(plane, reduce)
    budget = budget_from_env() if budget is None else budget
    part = _Partial.empty(plane.q)
    lines = np.ascontiguousarray(plane.lines)
    total = space.size
    step = 1 << 20
    for lo in range(0, total, step):
        if lo >= budget:
            raise BudgetExceeded(f"no witness within the first {budget} selections")
        hi = min(total, lo + step, budget)
        hit = _kernel.scan_range(lines, space.options, space.radix, lo, hi,
                                 part.hist, part.witness, part.bad, target_size)
        if hit >= 0:
            return space.selection(space.digits(int(hit)))
    return None


@dataclass
class ConformanceSummary:
    q: int
    checks: dict  # name -> bool
    violations: list
    info: dict = field(default_factory=dict)  # observations outside the verdict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"q": self.q, "ok": self.ok, "checks": self.checks, "violations": self.violations,
                "info": self.info}


def lower_bound(q: int) -> int:
    """Smallest possible Kakeya size: q(q+1)/2 for even q, plus (q-1)/2 for odd q."""
    return q * (q + 1) // 2 + (0 if q % 2 == 0 else (q - 1) // 2)


def verify_theorem(report: SpectrumReport, profile: BoundsProfile | None = None) -> ConformanceSummary:
    q = report.q
    profile = profile or theorem_threshold(q)
    cutoff = profile.theorem_size_cutoff
    violations = []

    in_interval = True
    for size in sorted(report.attained):
        if size < cutoff:
            continue
        for j in report.max_knots[size]:
            v = classify(q, size, q + 1 - j, profile)
            if v.status != "conforms":
                in_interval = False
                violations.append(v.as_dict() | {"max_knot": j})

    def inside(s):
        return any(lo <= s <= hi for _, lo, hi in profile.intervals)

    gap_hits = [s for s in report.attained if s >= cutoff and not inside(s)]
    # a largest knot of q-1 forces exactly q^2 - 2q + 4
    special = q * q - 2 * q + 3
    special_with_knot = [j for j in report.max_knots.get(special, []) if j == q - 1]

    checks = {
        "intervals": in_interval,
        "no_gap_sizes": not gap_hits,
        "q_minus_1_knot_size": not special_with_knot,
        "inequalities": not any(report.inequality_failures.values()),
    }
    if report.mode == "exhaustive":
        checks["minimum_size"] = report.min_size == lower_bound(q)
    else:
        checks["minimum_size"] = report.min_size >= lower_bound(q)
    if gap_hits:
        violations.append({"gap_sizes": sorted(gap_hits)})
    if special_with_knot:
        violations.append({"size": special, "max_knot": q - 1})
    info = {
        "q2_minus_2q_plus_3": special,
        "q2_minus_2q_plus_3_attained": special in report.attained,
        "q2_minus_2q_plus_3_max_knots": report.max_knots.get(special, []),
    }
    return ConformanceSummary(q, checks, violations, info)


@dataclass
class IdentityReport:
    n: int
    passed: dict  # check -> number of selections passing it
    min_size: int
    max_size: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v == self.n for v in self.passed.values())


def sample_check(plane: AffinePlane, n: int, seed: int) -> IdentityReport:
    """Counting identities and the three uncovered-point bounds on ``n``
    sampled selections, evaluated from scratch (independent of the kernel)."""
    if n < 1:
        raise ValueError("n must be positive")
    q = plane.q
    space = search_space(plane, reduce=False)
    rows = sample_digits(space, n, seed)
    names = ("points", "flags", "pairs", "lower_f", "lower_g", "upper_h")
    passed = dict.fromkeys(names, 0)
    failures = []
    sizes = []
    for row in rows:
        ks = cover(space.selection(row))
        spec = knot_spectrum(ks)
        _, k = max_knot(ks)
        x0 = spec.x[0]
        results = counting_identities(spec, q) | {
            "lower_f": x0 * (q + 1 - k) >= q * k,
            "lower_g": x0 >= k * (q - k),
            "upper_h": 2 * x0 <= 2 * k * q - k * (k + 1),
        }
        for name, ok in results.items():
            passed[name] += ok
        if not all(results.values()) and len(failures) < 10:
            failures.append({"selection": list(ks.selection.chosen), "spectrum": list(spec.x)})
        sizes.append(ks.size)
    return IdentityReport(n, passed, min(sizes), max(sizes), failures)
