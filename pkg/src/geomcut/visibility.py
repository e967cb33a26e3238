"""Free segments between object corners.

A segment is *free* when it misses the interior of every object.  The set
built here contains every object edge plus every free corner-to-corner
segment, with collinear overlaps cut into non-overlapping pieces so that two
output segments meet in at most one point.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .geom import (Instance, Location, Point, Polygon, Segment, lerp, param_on,
                   point_in_polygon, segment_intersection)


@dataclass(frozen=True)
class SegmentSet:
    segments: tuple[Segment, ...]
    corner_index: dict[Point, list[tuple[int, int]]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.segments)


def corner_index(inst: Instance) -> dict[Point, list[tuple[int, int]]]:
    index: dict[Point, list[tuple[int, int]]] = defaultdict(list)
    for oi, obj in enumerate(inst.objects):
        for vi, v in enumerate(obj.vertices):
            index[v].append((oi, vi))
    return dict(sorted(index.items()))


def corners(inst: Instance) -> list[Point]:
    """Distinct corner points, in lexicographic order."""
    return list(corner_index(inst))


def crosses_interior(s: Segment, poly: Polygon) -> bool:
    """Exact test for s meeting the interior of poly.

    s is cut at every point where it meets the boundary; each open piece is
    then wholly inside, outside or on the boundary, so one midpoint test per
    piece decides it.
    """
    x0, y0, x1, y1 = poly.bbox()
    sx0, sy0, sx1, sy1 = s.bbox()
    if sx1 <= x0 or x1 <= sx0 or sy1 <= y0 or y1 <= sy0:
        return False
    ts = {Fraction(0), Fraction(1)}
    for e in poly.edges():
        hit = segment_intersection(s, e)
        if isinstance(hit, Point):
            ts.add(param_on(s, hit))
        elif isinstance(hit, Segment):
            ts.add(param_on(s, hit.a))
            ts.add(param_on(s, hit.b))
    ts = sorted(ts)
    return any(point_in_polygon(lerp(s, (t0 + t1) / 2), poly) is Location.INTERIOR
               for t0, t1 in zip(ts, ts[1:]))


def is_free(s: Segment, inst: Instance) -> bool:
    return not any(crosses_interior(s, obj) for obj in inst.objects)


def _line_key(s: Segment) -> tuple[Fraction, Fraction, Fraction]:
    """Normalized (A, B, C) with A x + B y = C for the supporting line of s."""
    a_, b_ = s.b.y - s.a.y, s.a.x - s.b.x
    lead = a_ if a_ != 0 else b_
    a_, b_ = a_ / lead, b_ / lead
    return a_, b_, a_ * s.a.x + b_ * s.a.y


def canonicalize(segments: Iterable[Segment]) -> list[Segment]:
    """Split collinear overlaps so no two segments share more than a point.

    Segments on a common line are cut at all of their endpoints and the
    covered elementary pieces are kept once each.  Output is sorted.
    """
    by_line: dict[tuple, list[tuple[Point, Point]]] = defaultdict(list)
    for s in segments:
        c = s.canonical()
        by_line[_line_key(c)].append((c.a, c.b))
    out: set[Segment] = set()
    for group in by_line.values():
        if len(group) == 1:
            out.add(Segment(*group[0]))
            continue
        # endpoints are lexicographically ordered, which is the order along the line
        stops = sorted({p for ab in group for p in ab})
        rank = {p: i for i, p in enumerate(stops)}
        cover = [0] * len(stops)
        for a, b in group:
            cover[rank[a]] += 1
            cover[rank[b]] -= 1
        depth = 0
        for i in range(len(stops) - 1):
            depth += cover[i]
            if depth > 0:
                out.add(Segment(stops[i], stops[i + 1]))
    return sorted(out, key=lambda s: (s.a, s.b))


def free_segments(inst: Instance) -> SegmentSet:
    index = corner_index(inst)
    pts = list(index)
    candidates: list[Segment] = []
    for obj in inst.objects:
        candidates.extend(obj.edges())
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            s = Segment(p, q)
            if is_free(s, inst):
                candidates.append(s)
    return SegmentSet(tuple(canonicalize(candidates)), index)
