"""Kakeya sets: one chosen line per parallel class, their cover and knots."""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import ParseError, PointNotMaxKnot, SelectionClassMismatch
from .plane import AffinePlane


@dataclass(frozen=True)
class LineSelection:
    """Entry ``i`` of ``chosen`` is the selected line of parallel class ``i``."""

    plane: AffinePlane
    chosen: tuple

    def __post_init__(self):
        object.__setattr__(self, "chosen", tuple(int(c) for c in self.chosen))
        validate_selection(self)

    @classmethod
    def from_lines(cls, plane: AffinePlane, lines) -> "LineSelection":
        """Order an unordered collection of q+1 lines by class."""
        lines = [int(ln) for ln in lines]
        if len(lines) != plane.q + 1:
            raise SelectionClassMismatch(f"need {plane.q + 1} lines, got {len(lines)}")
        by_class = {}
        for ln in lines:
            if not 0 <= ln < plane.n_lines:
                raise SelectionClassMismatch(f"line {ln} does not exist")
            c = int(plane.line_class[ln])
            if c in by_class:
                raise SelectionClassMismatch(f"lines {by_class[c]} and {ln} are parallel (class {c})")
            by_class[c] = ln
        return cls(plane, tuple(by_class[c] for c in range(plane.q + 1)))

    @property
    def q(self) -> int:
        return self.plane.q


def validate_selection(sel: LineSelection) -> None:
    plane = sel.plane
    if len(sel.chosen) != plane.q + 1:
        raise SelectionClassMismatch(f"need {plane.q + 1} lines, got {len(sel.chosen)}")
    for c, ln in enumerate(sel.chosen):
        if not 0 <= ln < plane.n_lines:
            raise SelectionClassMismatch(f"line {ln} does not exist")
        if plane.line_class[ln] != c:
            raise SelectionClassMismatch(f"entry {c} is line {ln} of class {plane.line_class[ln]}")


@dataclass(frozen=True)
class KnotSpectrum:
    """``x[i]`` = number of points on exactly ``i`` chosen lines, i = 0..q+1."""

    x: tuple

    @property
    def q(self) -> int:
        return len(self.x) - 2

    def __getitem__(self, i):
        return self.x[i]

    def __len__(self):
        return len(self.x)


@dataclass(frozen=True)
class KakeyaSet:
    selection: LineSelection
    incidence: np.ndarray  # chosen lines through each point
    covered: np.ndarray  # packed uint64 point bitset

    @property
    def q(self) -> int:
        return self.selection.q

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.incidence))

    def points(self) -> np.ndarray:
        return np.flatnonzero(self.incidence)


def cover(selection: LineSelection) -> KakeyaSet:
    plane = selection.plane
    chosen = np.asarray(selection.chosen)
    incidence = np.bincount(plane.lines[chosen].ravel(), minlength=plane.n_points)
    covered = np.bitwise_or.reduce(plane.line_bits[chosen], axis=0)
    incidence.setflags(write=False)
    return KakeyaSet(selection, incidence, covered)


def knot_spectrum(ks: KakeyaSet) -> KnotSpectrum:
    x = np.bincount(ks.incidence, minlength=ks.q + 2)
    return KnotSpectrum(tuple(int(v) for v in x))


def counting_identities(spec: KnotSpectrum, q: int) -> dict:
    """The three standard counts: points, point-line flags, and ordered
    pairs of chosen lines through a common point."""
    x = spec.x
    return {
        "points": sum(x) == q * q,
        "flags": sum(i * v for i, v in enumerate(x)) == q * q + q,
        "pairs": sum(i * (i - 1) * v for i, v in enumerate(x)) == q * q + q,
    }


def verify_counting_identities(spec: KnotSpectrum, q: int) -> bool:
    if len(spec.x) != q + 2:
        return False
    return all(counting_identities(spec, q).values())


def max_knot(ks: KakeyaSet) -> tuple[int, int]:
    """``(j, k)``: the largest knot ``j`` and ``k = q + 1 - j``."""
    j = int(ks.incidence.max())
    return j, ks.q + 1 - j


def derived_views(ks: KakeyaSet, point: int, require_max: bool = False):
    """Lines relative to a knot ``point``.

    Returns ``(Lprime, M)``: chosen lines missing ``point`` and unchosen
    lines through it.  Both have ``q + 1 - incidence[point]`` members.
    """
    if require_max and ks.incidence[point] != ks.incidence.max():
        raise PointNotMaxKnot(f"point {point} is a {ks.incidence[point]}-knot, "
                              f"largest is {ks.incidence.max()}")
    plane = ks.selection.plane
    chosen = set(ks.selection.chosen)
    through = plane.pencil_lines(point)
    lprime = [ln for ln in ks.selection.chosen if point not in plane.lines[ln]]
    m = [int(ln) for ln in through if ln not in chosen]
    return lprime, m


class IncrementalCover:
    """Per-point incidence counts and the knot histogram under single-line
    add/remove.  Each update touches the q points of one line."""

    def __init__(self, plane: AffinePlane, lines=()):
        self.plane = plane
        self.counts = np.zeros(plane.n_points, dtype=np.int64)
        self.hist = np.zeros(plane.q + 2, dtype=np.int64)
        self.hist[0] = plane.n_points
        self.n_lines = 0
        for ln in lines:
            self.add(ln)

    def add(self, line: int) -> None:
        for p in self.plane.lines[line]:
            c = self.counts[p]
            self.hist[c] -= 1
            self.hist[c + 1] += 1
            self.counts[p] = c + 1
        self.n_lines += 1

    def remove(self, line: int) -> None:
        for p in self.plane.lines[line]:
            c = self.counts[p]
            self.hist[c] -= 1
            self.hist[c - 1] += 1
            self.counts[p] = c - 1
        self.n_lines -= 1

    def replace(self, old: int, new: int) -> None:
        self.remove(old)
        self.add(new)

    @property
    def uncovered(self) -> int:
        return int(self.hist[0])

    @property
    def size(self) -> int:
        return self.plane.n_points - int(self.hist[0])

    @property
    def max_knot(self) -> int:
        nz = np.flatnonzero(self.hist)
        return int(nz[-1])


def read_selection(plane: AffinePlane, stream: TextIO | str) -> LineSelection:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    try:
        values = [int(t) for t in stream.read().split()]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return LineSelection.from_lines(plane, values)


def write_selection(sel: LineSelection, stream: TextIO | None = None) -> str:
    text = " ".join(str(c) for c in sel.chosen) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def analyze(sel: LineSelection) -> dict:
    """The JSON analysis record of one selection."""
    ks = cover(sel)
    spec = knot_spectrum(ks)
    j, k = max_knot(ks)
    return {
        "q": sel.q,
        "selection": list(sel.chosen),
        "size": ks.size,
        "spectrum": list(spec.x),
        "max_knot": j,
        "k": k,
        "identities": counting_identities(spec, sel.q),
    }
