"""Named Kakeya selections with known sizes.

All choices are deterministic, so the same arguments always give the same
line indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EvenOrder, InvalidChoice, NotASquareOrder, OddOrder
from .gf import Field, field_of_order
from .kakeya import LineSelection
from .plane import (
    AffinePlane,
    affine_from_projective,
    baer_sublines,
    desarguesian_affine,
)

FAMILIES = ("pencil", "near_pencil", "dual_hyperoval", "dual_oval_plus_line", "baer")


def pencil(plane: AffinePlane, point: int = 0) -> LineSelection:
    """All q+1 lines through ``point``: size q^2, one (q+1)-knot."""
    return LineSelection(plane, tuple(plane.pencil_lines(point)))


def near_pencil(plane: AffinePlane, point: int = 0) -> LineSelection:
    """Pencil at ``point`` with its last-class line swapped for the
    lowest-indexed parallel line: size q^2 - q + 1, largest knot q."""
    chosen = list(plane.pencil_lines(point))
    last = plane.q
    chosen[last] = min(int(ln) for ln in plane.classes[last] if ln != chosen[last])
    return LineSelection(plane, tuple(chosen))


def _affine_line(plane_q: int, slope: int | None, value: int) -> int:
    # line index in desarguesian_affine: y = slope*x + value, or x = value
    return plane_q * plane_q + value if slope is None else slope * plane_q + value


def dual_hyperoval(fld: Field) -> LineSelection:
    """The lines ``x = t*y + t^2`` together with ``y = 0``, q even.

    No three of the q+1 lines are concurrent, so the set has size q(q+1)/2.
    """
    if fld.p != 2:
        raise OddOrder(f"q={fld.q} is odd")
    q = fld.q
    plane = desarguesian_affine(fld)
    lines = [_affine_line(q, 0, 0), _affine_line(q, None, 0)]  # y = 0 and x = 0 (t = 0)
    for t in range(1, q):
        # x = t*y + t^2  <=>  y = t^-1 * x - t
        ti = fld.inv(t)
        lines.append(_affine_line(q, ti, fld.neg(t)))
    return LineSelection.from_lines(plane, lines)


def dual_oval_plus_line(fld: Field) -> LineSelection:
    """Tangents ``y = 2a*x - a^2`` of the conic ``y = x^2`` plus ``x = 0``, q odd.

    Size q(q+1)/2 + (q-1)/2.
    """
    if fld.p == 2:
        raise EvenOrder(f"q={fld.q} is even")
    q = fld.q
    plane = desarguesian_affine(fld)
    two = fld.add(1, 1)
    lines = [_affine_line(q, None, 0)]
    for a in range(q):
        lines.append(_affine_line(q, fld.mul(two, a), fld.neg(fld.mul(a, a))))
    return LineSelection.from_lines(plane, lines)


@dataclass
class BaerConfiguration:
    """The pieces of the Baer-subplane example, in projective indices
    unless noted."""

    selection: LineSelection  # on ``plane``
    plane: AffinePlane
    subplane_points: list
    tangent_point: int  # P
    removed_line: int  # the tangent line through P
    extended_through_p: list  # the sqrt(q)+1 candidates for m
    m: int
    lprime: list  # extended lines missing P
    notes: dict = field(default_factory=dict)


def baer_configuration(fld: Field, m_choice: int = 0) -> BaerConfiguration:
    """Kakeya set of size q^2 - q*sqrt(q) + q from a Baer subplane.

    Remove a tangent line of the subplane at its first point P.  Choose the
    q extended subplane lines missing P and one extended line m through P.
    """
    if fld.e % 2:
        raise NotASquareOrder(f"q={fld.q} is not a square")
    baer = baer_sublines(fld)
    pp = baer.projective
    r = baer.order
    sub = set(int(p) for p in baer.points)
    P = min(sub)
    tangents = [int(ln) for ln in pp.point_lines[P] if baer.line_meets[ln] == 1]
    removed = min(tangents)
    extended = [int(ln) for ln in baer.extended_lines]
    through_p = sorted(ln for ln in extended if pp.incidence[ln, P])
    if not 0 <= m_choice < len(through_p):
        raise InvalidChoice(f"m_choice must be in [0, {len(through_p) - 1}]")
    m = through_p[m_choice]
    lprime = sorted(ln for ln in extended if not pp.incidence[ln, P])
    assert len(through_p) == r + 1 and len(lprime) == fld.q

    plane = affine_from_projective(pp, removed)
    affine_index = {int(pl): i for i, pl in enumerate(plane.proj_lines)}
    sel = LineSelection.from_lines(plane, [affine_index[ln] for ln in lprime + [m]])
    return BaerConfiguration(sel, plane, sorted(sub), P, removed, through_p, m, lprime)


def baer_construction(fld: Field, m_choice: int = 0) -> LineSelection:
    return baer_configuration(fld, m_choice).selection


def expected_size(family: str, q: int) -> int:
    """Closed-form size of each family."""
    if family == "pencil":
        return q * q
    if family == "near_pencil":
        return q * q - q + 1
    if family == "dual_hyperoval":
        return q * (q + 1) // 2
    if family == "dual_oval_plus_line":
        return q * (q + 1) // 2 + (q - 1) // 2
    if family == "baer":
        r = math.isqrt(q)
        return q * q - q * r + q
    raise ValueError(f"unknown family {family!r}")


def applicable(family: str, q: int) -> bool:
    fld = field_of_order(q)
    if family == "dual_hyperoval":
        return fld.p == 2
    if family == "dual_oval_plus_line":
        return fld.p != 2
    if family == "baer":
        return fld.e % 2 == 0
    return family in FAMILIES


@dataclass
class ConstructionSpec:
    family: str
    q: int
    point: int = 0  # centre for pencil / near_pencil
    m_choice: int = 0  # baer only

    def build(self) -> LineSelection:
        fld = field_of_order(self.q)
        if self.family == "pencil":
            return pencil(desarguesian_affine(fld), self.point)
        if self.family == "near_pencil":
            return near_pencil(desarguesian_affine(fld), self.point)
        if self.family == "dual_hyperoval":
            return dual_hyperoval(fld)
        if self.family == "dual_oval_plus_line":
            return dual_oval_plus_line(fld)
        if self.family == "baer":
            return baer_construction(fld, self.m_choice)
        raise ValueError(f"unknown family {self.family!r}")
