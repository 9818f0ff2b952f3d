"""Affine and projective planes as integer incidence structures.

Points and lines are dense indices.  An :class:`AffinePlane` stores its
lines as a ``(q*q + q, q)`` array of sorted point indices together with an
explicit partition of the lines into ``q + 1`` parallel classes.
"""

from __future__ import annotations

import functools
import io
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .errors import AxiomViolation, InvalidLineIndex, NotASquareOrder, ParseError
from .gf import Field


class AffinePlane:
    """Affine plane of order ``q`` with explicit parallel classes.

    Parameters
    ----------
    q : int
        Order of the plane.
    lines : array_like, shape (n_lines, q)
        Point indices of every line.
    classes : array_like, shape (q + 1, q)
        Line indices of each parallel class.
    translation : bool
        Whether the plane is known to be a translation plane whose
        translation group moves point 0 anywhere while fixing every
        parallel class.  Only planes built from coordinates set this; the
        search uses it for symmetry reduction.

    The constructor only checks shapes.  Use :func:`verify_affine_axioms`
    for the incidence axioms.
    """

    def __init__(self, q, lines, classes, translation=False, proj_points=None, proj_lines=None):
        lines = np.asarray(lines, dtype=np.int64)
        classes = np.asarray(classes, dtype=np.int64)
        if lines.ndim != 2 or lines.shape[1] != q:
            raise AxiomViolation(f"every line must have exactly q={q} points")
        if classes.shape != (q + 1, q):
            raise AxiomViolation(f"need q+1={q + 1} classes of q={q} lines, got shape {classes.shape}")
        n_points = q * q
        if lines.size and (lines.min() < 0 or lines.max() >= n_points):
            raise AxiomViolation("point index out of range")
        if classes.min() < 0 or classes.max() >= len(lines):
            raise AxiomViolation("class refers to a nonexistent line")
        self.q = q
        self.lines = np.sort(lines, axis=1)
        self.classes = classes
        self.translation = translation
        # maps back to a parent projective plane, when there is one
        self.proj_points = proj_points
        self.proj_lines = proj_lines

        line_class = np.full(len(lines), -1, dtype=np.int64)
        for c, members in enumerate(classes):
            line_class[members] = c
        self.line_class = line_class

        order = np.argsort(self.lines.ravel(), kind="stable")
        owner = np.repeat(np.arange(len(lines)), q)[order]
        bounds = np.searchsorted(self.lines.ravel()[order], np.arange(n_points + 1))
        self.point_lines = [owner[bounds[p]:bounds[p + 1]] for p in range(n_points)]

        # class_point_line[c, P] = the line of class c through P (or -1)
        cpl = np.full((q + 1, n_points), -1, dtype=np.int64)
        for c, members in enumerate(classes):
            for ln in members:
                cpl[c, self.lines[ln]] = ln
        self.class_point_line = cpl

        for arr in (self.lines, self.classes, self.line_class, self.class_point_line):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"AffinePlane(q={self.q})"

    @property
    def n_points(self) -> int:
        return self.q * self.q

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    @functools.cached_property
    def line_bits(self) -> np.ndarray:
        """Line point sets packed into 64-bit blocks, shape (n_lines, ceil(q^2/64))."""
        nblocks = -(-self.n_points // 64)
        bits = np.zeros((self.n_lines, nblocks), dtype=np.uint64)
        for i, pts in enumerate(self.lines):
            for p in pts:
                bits[i, p >> 6] |= np.uint64(1) << np.uint64(p & 63)
        bits.setflags(write=False)
        return bits

    def pencil_lines(self, point: int) -> np.ndarray:
        """Lines through ``point``, one per class in class order."""
        return self.class_point_line[:, point].copy()


@dataclass
class ProjectivePlane:
    q: int
    lines: np.ndarray  # (n, q+1) sorted point indices
    points: list | None = None  # normalized homogeneous coordinates, if known
    desarguesian: bool = False
    point_lines: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.q * self.q + self.q + 1
        self.lines = np.sort(np.asarray(self.lines, dtype=np.int64), axis=1)
        inc = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(len(self.lines)), self.q + 1)
        inc[rows, self.lines.ravel()] = True
        self.incidence = inc  # incidence[line, point]
        self.point_lines = np.array([np.flatnonzero(inc[:, p]) for p in range(n)])

    @property
    def n_points(self) -> int:
        return self.q * self.q + self.q + 1


@dataclass
class ValidationReport:
    entries: list = field(default_factory=list)  # (axiom, ok, detail)

    def add(self, axiom: str, ok: bool, detail: str = "") -> None:
        self.entries.append((axiom, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def first_failure(self):
        return next((e for e in self.entries if not e[1]), None)

    def as_dict(self) -> dict:
        return {name: {"pass": ok, "detail": detail} for name, ok, detail in self.entries}


@functools.lru_cache(maxsize=None)
def desarguesian_affine(fld: Field) -> AffinePlane:
    """AG(2, q): point ``x*q + y``; line ``m*q + c`` is ``y = m*x + c``,
    line ``q*q + c`` is ``x = c``.  Class ``m`` holds slope ``m``; the
    vertical class is last."""
    q = fld.q
    xs = np.arange(q)
    lines = np.empty((q * q + q, q), dtype=np.int64)
    for m in range(q):
        mx = fld.mul_table[m, xs]
        for c in range(q):
            lines[m * q + c] = xs * q + fld.add_table[mx, c]
    for c in range(q):
        lines[q * q + c] = c * q + xs
    classes = np.arange(q * q + q).reshape(q + 1, q)
    return AffinePlane(q, lines, classes, translation=True)


def _projective_coords(fld: Field) -> np.ndarray:
    q = fld.q
    pts = [(0, 0, 1)]
    pts += [(0, 1, z) for z in range(q)]
    pts += [(1, y, z) for y in range(q) for z in range(q)]
    return np.array(pts, dtype=np.int64)


@functools.lru_cache(maxsize=None)
def desarguesian_projective(fld: Field) -> ProjectivePlane:
    """PG(2, q) with points and lines both indexed by normalized coordinate
    triples in lexicographic order; point X is on line A iff A.X = 0."""
    q = fld.q
    coords = _projective_coords(fld)
    mt, at = fld.mul_table, fld.add_table
    a, x = coords[:, None, :], coords[None, :, :]
    dot = at[at[mt[a[..., 0], x[..., 0]], mt[a[..., 1], x[..., 1]]], mt[a[..., 2], x[..., 2]]]
    lines = np.array([np.flatnonzero(row == 0) for row in dot])
    assert lines.shape == (q * q + q + 1, q + 1)
    return ProjectivePlane(q, lines, points=[tuple(map(int, c)) for c in coords], desarguesian=True)


def affine_from_projective(pp: ProjectivePlane, line_at_infinity: int) -> AffinePlane:
    """Remove a line and its points.

    Affine points are the remaining projective points in increasing order.
    Class ``c`` consists of the other lines through the ``c``-th point of
    the removed line; line index is ``c*q + j``.
    """
    q = pp.q
    if not 0 <= line_at_infinity < len(pp.lines):
        raise InvalidLineIndex(f"no line {line_at_infinity} in a plane with {len(pp.lines)} lines")
    at_inf = pp.lines[line_at_infinity]
    on_inf = np.zeros(pp.n_points, dtype=bool)
    on_inf[at_inf] = True
    proj_points = np.flatnonzero(~on_inf)
    to_affine = np.full(pp.n_points, -1, dtype=np.int64)
    to_affine[proj_points] = np.arange(len(proj_points))

    lines, proj_lines = [], []
    for ip in at_inf:
        for ln in pp.point_lines[ip]:
            if ln == line_at_infinity:
                continue
            pts = pp.lines[ln]
            lines.append(np.sort(to_affine[pts[~on_inf[pts]]]))
            proj_lines.append(ln)
    classes = np.arange(q * q + q).reshape(q + 1, q)
    return AffinePlane(
        q, np.array(lines), classes,
        translation=pp.desarguesian,
        proj_points=proj_points,
        proj_lines=np.array(proj_lines),
    )


def verify_affine_axioms(plane: AffinePlane) -> ValidationReport:
    q, n = plane.q, plane.n_points
    rep = ValidationReport()
    rep.add("line_count", plane.n_lines == q * q + q, f"{plane.n_lines} lines, expected {q * q + q}")

    distinct = np.all(np.diff(plane.lines, axis=1) > 0, axis=1)
    bad = np.flatnonzero(~distinct)
    rep.add("line_size", bad.size == 0,
            f"line {bad[0]} repeats a point" if bad.size else f"all lines have {q} points")

    i, j = np.triu_indices(q, 1)
    pair_ids = (plane.lines[:, i] * n + plane.lines[:, j]).ravel()
    counts = np.bincount(pair_ids, minlength=n * n).reshape(n, n)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    wrong = np.argwhere(upper & (counts != 1))
    if wrong.size:
        a, b = wrong[0]
        detail = f"points {a} and {b} lie on {counts[a, b]} common lines"
    else:
        detail = "every pair of points on exactly one line"
    rep.add("two_design", wrong.size == 0, detail)

    detail = "each class partitions the points"
    ok = True
    for c, members in enumerate(plane.classes):
        cover = np.bincount(plane.lines[members].ravel(), minlength=n)
        if not np.all(cover == 1):
            ok = False
            detail = f"class {c} does not partition the points"
            break
    rep.add("class_partition", ok, detail)

    degree = np.array([len(pl) for pl in plane.point_lines])
    bad = np.flatnonzero(degree != q + 1)
    rep.add("point_degree", bad.size == 0,
            f"point {bad[0]} on {degree[bad[0]]} lines" if bad.size else f"every point on {q + 1} lines")
    return rep


def verify_projective_axioms(pp: ProjectivePlane) -> ValidationReport:
    rep = ValidationReport()
    inc = pp.incidence.astype(np.int64)
    meet = inc @ inc.T
    join = inc.T @ inc
    off = ~np.eye(len(inc), dtype=bool)
    rep.add("lines_meet_once", bool(np.all(meet[off] == 1)), "")
    rep.add("points_join_once", bool(np.all(join[off] == 1)), "")
    return rep


def _ensure_valid(plane: AffinePlane) -> AffinePlane:
    report = verify_affine_axioms(plane)
    bad = report.first_failure()
    if bad is not None:
        raise AxiomViolation(f"{bad[0]}: {bad[2]}")
    return plane


def infer_classes(q: int, lines: list) -> list[list[int]]:
    """Greedy partition of lines into families of pairwise disjoint lines."""
    families: list[list[int]] = []
    covered: list[set] = []
    for idx, pts in enumerate(lines):
        s = set(pts)
        for fam, cov in zip(families, covered):
            if not (cov & s):
                fam.append(idx)
                cov |= s
                break
        else:
            families.append([idx])
            covered.append(set(s))
    return families


def load_plane(stream: TextIO | str) -> AffinePlane:
    """Parse a plane file and validate it.

    Format: ``q <order>`` then ``q*q + q`` records ``L <class> <p0> ... <p(q-1)>``.
    Class ``-1`` on every record means the classes are inferred.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    rows = [ln.split() for ln in stream if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or rows[0][0] != "q" or len(rows[0]) != 2:
        raise ParseError("first record must be 'q <order>'")
    try:
        q = int(rows[0][1])
        records = []
        for k, r in enumerate(rows[1:], start=2):
            if r[0] != "L":
                raise ParseError(f"record {k}: expected 'L', got {r[0]!r}")
            records.append((int(r[1]), [int(t) for t in r[2:]]))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if q < 2:
        raise ParseError("order must be at least 2")
    if len(records) != q * q + q:
        raise AxiomViolation(f"expected {q * q + q} lines, got {len(records)}")
    for idx, (_, pts) in enumerate(records):
        if len(pts) != q or len(set(pts)) != q:
            raise AxiomViolation(f"line {idx} does not have {q} distinct points")
        if min(pts) < 0 or max(pts) >= q * q:
            raise AxiomViolation(f"line {idx} has a point index out of range")

    labels = [c for c, _ in records]
    lines = [pts for _, pts in records]
    if all(c == -1 for c in labels):
        families = infer_classes(q, lines)
    elif any(c == -1 for c in labels):
        raise ParseError("class labels must be given for all lines or for none")
    else:
        fam: dict[int, list[int]] = {}
        for idx, c in enumerate(labels):
            fam.setdefault(c, []).append(idx)
        if sorted(fam) != list(range(len(fam))):
            raise ParseError("class labels must be 0..q")
        families = [fam[c] for c in sorted(fam)]
    if len(families) != q + 1:
        raise AxiomViolation(f"found {len(families)} parallel classes, expected {q + 1}")
    for c, members in enumerate(families):
        if len(members) != q:
            raise AxiomViolation(f"class {c} has {len(members)} lines, expected {q}")
    return _ensure_valid(AffinePlane(q, lines, families))


def dump_plane(plane: AffinePlane, stream: TextIO | None = None) -> str:
    """Write the plane file format; returns the text as well."""
    out = [f"q {plane.q}"]
    for idx, pts in enumerate(plane.lines):
        out.append("L " + " ".join(str(int(v)) for v in [plane.line_class[idx], *pts]))
    text = "\n".join(out) + "\n"
    if stream is not None:
        stream.write(text)
    return text


@dataclass
class BaerSubplane:
    projective: ProjectivePlane
    order: int  # sqrt(q)
    points: np.ndarray  # projective point indices of the subplane
    line_meets: np.ndarray  # per projective line, number of subplane points on it
    extended_lines: np.ndarray  # lines meeting the subplane in order+1 points


def baer_sublines(fld: Field) -> BaerSubplane:
    """The subplane PG(2, sqrt q) over the subfield fixed by a -> a^sqrt(q)."""
    if fld.e % 2:
        raise NotASquareOrder(f"q={fld.q} is not a square")
    pp = desarguesian_projective(fld)
    sub = np.zeros(fld.q, dtype=bool)
    sub[fld.fixed_by_frobenius(fld.e // 2)] = True
    coords = np.array(pp.points)
    points = np.flatnonzero(sub[coords].all(axis=1))
    meets = pp.incidence[:, points].sum(axis=1)
    order = fld.p ** (fld.e // 2)
    return BaerSubplane(pp, order, points, meets, np.flatnonzero(meets == order + 1))


def incidence_certificate(plane: AffinePlane, iterations: int = 4) -> str:
    """Relabeling-invariant hash of the point-line incidence graph.

    Weisfeiler-Lehman refinement: equal for isomorphic planes, but not a
    complete invariant.
    """
    import networkx as nx

    g = nx.Graph()
    for p in range(plane.n_points):
        g.add_node(("p", p), kind="point")
    for i, pts in enumerate(plane.lines):
        g.add_node(("l", i), kind="line")
        g.add_edges_from((("l", i), ("p", int(p))) for p in pts)
    return nx.weisfeiler_lehman_graph_hash(g, node_attr="kind", iterations=iterations)

