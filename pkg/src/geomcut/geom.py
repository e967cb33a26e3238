"""Exact rational planar primitives and instance validation.

Every topological decision (sidedness, incidence, intersection) is made with
:class:`fractions.Fraction` arithmetic.  Only lengths are floats.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Fraction


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def as_rational(value) -> Fraction:
    """Convert an int, Fraction or decimal string to a Fraction.

    Floats are converted exactly (their binary value), which is rarely what a
    caller wants; pass strings for decimal input.
    """
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def pt(x, y) -> Point:
    return Point(as_rational(x), as_rational(y))


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"zero-length segment at {self.a}")

    def canonical(self) -> "Segment":
        """Same segment with endpoints in lexicographic order."""
        return self if self.a < self.b else Segment(self.b, self.a)

    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (min(self.a.x, self.b.x), min(self.a.y, self.b.y),
                max(self.a.x, self.b.x), max(self.a.y, self.b.y))


def seg(x1, y1, x2, y2) -> Segment:
    return Segment(pt(x1, y1), pt(x2, y2))


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------

def cross(p: Point, q: Point, r: Point) -> Fraction:
    """(q - p) x (r - p)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orientation(p: Point, q: Point, r: Point) -> int:
    """+1 for a left turn p->q->r, -1 for a right turn, 0 if collinear."""
    c = cross(p, q, r)
    return (c > 0) - (c < 0)


def on_segment(p: Point, s: Segment) -> bool:
    """True iff p lies on the closed segment s."""
    a, b = s.a, s.b
    if cross(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def param_on(s: Segment, p: Point) -> Fraction:
    """Parameter t with p = a + t (b - a); p is assumed to be on the line of s."""
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    if abs(dx) >= abs(dy):
        return (p.x - s.a.x) / dx
    return (p.y - s.a.y) / dy


def lerp(s: Segment, t: Fraction) -> Point:
    return Point(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y))


def _bboxes_overlap(s: Segment, t: Segment) -> bool:
    if max(s.a.x, s.b.x) < min(t.a.x, t.b.x) or max(t.a.x, t.b.x) < min(s.a.x, s.b.x):
        return False
    if max(s.a.y, s.b.y) < min(t.a.y, t.b.y) or max(t.a.y, t.b.y) < min(s.a.y, s.b.y):
        return False
    return True


Intersection = Union[None, Point, Segment]


def segment_intersection(s: Segment, t: Segment) -> Intersection:
    """Exact intersection of two closed segments.

    Returns ``None`` when they are disjoint, a :class:`Point` for a single
    common point, or a :class:`Segment` (lexicographically ordered) for the
    maximal shared piece of two overlapping collinear segments.
    """
    if not _bboxes_overlap(s, t):
        return None
    a, b, c, d = s.a, s.b, t.a, t.b
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    if d1 == 0 and d2 == 0:
        # collinear: intersect the parameter intervals along s
        tc, td = param_on(s, c), param_on(s, d)
        lo = max(Fraction(0), min(tc, td))
        hi = min(Fraction(1), max(tc, td))
        if lo > hi:
            return None
        if lo == hi:
            return lerp(s, lo)
        return Segment(lerp(s, lo), lerp(s, hi)).canonical()
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return None
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    # proper crossing or touching; d1 != d2 here
    u = d1 / (d1 - d2)
    return lerp(s, u)


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def point_in_ring(p: Point, ring) -> Location:
    """Classify p against the closed polygonal ring given as a vertex sequence."""
    n = len(ring)
    inside = False
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if a == b:
            continue
        if cross(a, b, p) == 0 and min(a.x, b.x) <= p.x <= max(a.x, b.x) \
                and min(a.y, b.y) <= p.y <= max(a.y, b.y):
            return Location.BOUNDARY
        # half-open rule on y avoids double counting at vertices
        if (a.y > p.y) != (b.y > p.y):
            c = cross(a, b, p)
            if (c > 0) == (b.y > a.y):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def winding_number(p: Point, ring) -> int:
    """Winding number of a closed vertex walk around p (p must not lie on it)."""
    w = 0
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and cross(a, b, p) > 0:
                w += 1
        elif b.y <= p.y and cross(a, b, p) < 0:
            w -= 1
    return w


def signed_area2(ring) -> Fraction:
    """Twice the signed area of a vertex ring (positive if counterclockwise)."""
    total = Fraction(0)
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


def euclid_length(s: Segment) -> float:
    return math.hypot(float(s.b.x - s.a.x), float(s.b.y - s.a.y))


# ---------------------------------------------------------------------------
# Polygons and instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """A colored simple polygon, stored counterclockwise.

    Clockwise input is reversed with a warning.  Other invariants (simplicity,
    vertex count) are checked by :func:`validate_instance`, not here, so that
    a report can list every problem at once.
    """

    vertices: tuple[Point, ...]
    color: int

    def __post_init__(self):
        verts = tuple(v if isinstance(v, Point) else pt(*v) for v in self.vertices)
        if signed_area2(verts) < 0:
            warnings.warn("clockwise polygon reversed to counterclockwise", stacklevel=3)
            verts = verts[::-1]
        object.__setattr__(self, "vertices", verts)

    def edges(self) -> list[Segment]:
        n = len(self.vertices)
        return [Segment(self.vertices[i], self.vertices[(i + 1) % n])
                for i in range(n) if self.vertices[i] != self.vertices[(i + 1) % n]]

    def locate(self, p: Point) -> Location:
        return point_in_polygon(p, self)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def area(self) -> Fraction:
        return signed_area2(self.vertices) / 2

    def perimeter(self) -> float:
        return sum(euclid_length(e) for e in self.edges())


@dataclass(frozen=True)
class Instance:
    num_colors: int
    objects: tuple[Polygon, ...]

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))

    def colors_used(self) -> set[int]:
        return {o.color for o in self.objects}


def point_in_polygon(p: Point, poly: Polygon) -> Location:
    return point_in_ring(p, poly.vertices)


def interior_point(ring) -> Point:
    """A rational point strictly inside a simple counterclockwise ring."""
    n = len(ring)
    i = min(range(n), key=lambda j: ring[j])  # lowest-leftmost vertex is convex
    u, v, w = ring[i - 1], ring[i], ring[(i + 1) % n]
    best = None
    best_dist = None
    for j in range(n):
        q = ring[j]
        if q in (u, v, w):
            continue
        if orientation(u, v, q) >= 0 and orientation(v, w, q) >= 0 and orientation(w, u, q) >= 0:
            # q in the closed triangle: take the one farthest from line uw
            dist = abs(cross(u, w, q))
            if best is None or dist > best_dist:
                best, best_dist = q, dist
    if best is None:
        return Point((u.x + v.x + w.x) / 3, (u.y + v.y + w.y) / 3)
    return Point((v.x + best.x) / 2, (v.y + best.y) / 2)


def _boundary_enters(p: Polygon, q: Polygon) -> bool:
    """True iff some piece of p's boundary runs through q's interior."""
    qx0, qy0, qx1, qy1 = q.bbox()
    q_edges = q.edges()
    for e in p.edges():
        ex0, ey0, ex1, ey1 = e.bbox()
        if ex1 < qx0 or qx1 < ex0 or ey1 < qy0 or qy1 < ey0:
            continue
        ts = {Fraction(0), Fraction(1)}
        for f in q_edges:
            hit = segment_intersection(e, f)
            if isinstance(hit, Point):
                ts.add(param_on(e, hit))
            elif isinstance(hit, Segment):
                ts.add(param_on(e, hit.a))
                ts.add(param_on(e, hit.b))
        ts = sorted(ts)
        for t0, t1 in zip(ts, ts[1:]):
            if point_in_polygon(lerp(e, (t0 + t1) / 2), q) is Location.INTERIOR:
                return True
    return False


def interiors_overlap(p: Polygon, q: Polygon) -> bool:
    """Exact test for a common interior point of two simple polygons."""
    px0, py0, px1, py1 = p.bbox()
    qx0, qy0, qx1, qy1 = q.bbox()
    if px1 <= qx0 or qx1 <= px0 or py1 <= qy0 or qy1 <= py0:
        return False
    if _boundary_enters(p, q) or _boundary_enters(q, p):
        return True
    # no boundary crossing left: disjoint, or one polygon equals the other
    return (point_in_polygon(interior_point(p.vertices), q) is Location.INTERIOR
            or point_in_polygon(interior_point(q.vertices), p) is Location.INTERIOR)


def is_simple(vertices) -> bool:
    n = len(vertices)
    if n < 3 or len(set(vertices)) != n:
        return False
    edges = [Segment(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            hit = segment_intersection(edges[i], edges[j])
            if hit is None:
                continue
            if j == i + 1:
                shared = vertices[j]
            elif i == 0 and j == n - 1:
                shared = vertices[0]
            else:
                return False
            if hit != shared:
                return False
    return True


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

class Violation(NamedTuple):
    kind: str  # NonSimplePolygon, TooFewVertices, OverlappingInteriors, BadColorIndex, ZeroAreaPolygon
    objects: tuple[int, ...]
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        return "\n".join(f"{v.kind} {list(v.objects)}: {v.message}" for v in self.violations)


def validate_instance(inst: Instance) -> ValidationReport:
    report = ValidationReport()
    add = report.violations.append
    if inst.num_colors < 1:
        add(Violation("BadColorIndex", (), f"num_colors must be >= 1, got {inst.num_colors}"))
    well_formed = []
    for i, obj in enumerate(inst.objects):
        ok = True
        if not (0 <= obj.color < max(inst.num_colors, 0)):
            add(Violation("BadColorIndex", (i,), f"color {obj.color} outside [0, {inst.num_colors})"))
        verts = obj.vertices
        if len(verts) < 3:
            add(Violation("TooFewVertices", (i,), f"{len(verts)} vertices"))
            continue
        if signed_area2(verts) == 0:
            add(Violation("ZeroAreaPolygon", (i,), "polygon has zero area"))
            ok = False
        elif not is_simple(verts):
            add(Violation("NonSimplePolygon", (i,), "boundary self-intersects or repeats a vertex"))
            ok = False
        if ok:
            well_formed.append(i)
    for a_pos, i in enumerate(well_formed):
        for j in well_formed[a_pos + 1:]:
            if interiors_overlap(inst.objects[i], inst.objects[j]):
                add(Violation("OverlappingInteriors", (i, j), "object interiors intersect"))
    return report
