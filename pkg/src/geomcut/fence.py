"""Fences: extraction from cuts, separation checks and SVG rendering."""

from __future__ import annotations

import io
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, BinaryIO, Optional, Union

from .arrangement import Arrangement, build_arrangement, locate_object_faces
from .errors import InvariantViolation, ProvenanceMismatch, SinkWriteFailure
from .geom import Instance, Point, Segment, euclid_length, on_segment
from .visibility import canonicalize

if TYPE_CHECKING:
    from .cut_solvers import Cut


@dataclass(frozen=True)
class Fence:
    segments: tuple[Segment, ...]
    total_length: float
    source_cut: Optional["Cut"] = None

    @classmethod
    def from_segments(cls, segments) -> "Fence":
        segs = tuple(sorted((s.canonical() for s in segments), key=lambda s: (s.a, s.b)))
        return cls(segs, sum(euclid_length(s) for s in segs))

    def vertex_degrees(self) -> Counter:
        deg: Counter = Counter()
        for s in self.segments:
            deg[s.a] += 1
            deg[s.b] += 1
        return deg

    def is_closed(self) -> bool:
        """Every fence vertex has even degree, i.e. the fence is a union of closed curves."""
        return all(d % 2 == 0 for d in self.vertex_degrees().values())

    def components(self) -> list[list[Segment]]:
        """Segments grouped by connectivity of their endpoints."""
        parent: dict[Point, Point] = {}

        def find(p):
            parent.setdefault(p, p)
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for s in self.segments:
            parent[find(s.a)] = find(s.b)
        groups: dict[Point, list[Segment]] = defaultdict(list)
        for s in self.segments:
            groups[find(s.a)].append(s)
        return sorted(groups.values(), key=lambda g: (g[0].a, g[0].b))

    def is_single_cycle(self) -> bool:
        return (bool(self.segments) and len(self.components()) == 1
                and all(d == 2 for d in self.vertex_degrees().values()))


def extract_fence(arr: Arrangement, cut: "Cut") -> Fence:
    ids = sorted(cut.arrangement_edges)
    if ids and (ids[0] < 0 or ids[-1] >= len(arr.edges)):
        raise ProvenanceMismatch(f"cut references edges outside 0..{len(arr.edges) - 1}")
    segs = tuple(arr.edge_segment(e) for e in ids)
    total = sum(arr.edges[e][2] for e in ids)
    if abs(total - cut.value) > 1e-9 * max(1.0, abs(cut.value)):
        raise ProvenanceMismatch(f"fence length {total} differs from cut value {cut.value}")
    return Fence(tuple(sorted(segs, key=lambda s: (s.a, s.b))), total, cut)


# ---------------------------------------------------------------------------
# Separation check
# ---------------------------------------------------------------------------

@dataclass
class SeparationReport:
    valid: bool
    violations: list[tuple[int, int]] = field(default_factory=list)
    regions: int = 0

    def __str__(self) -> str:
        if self.valid:
            return f"separated: yes ({self.regions} regions)"
        pairs = ", ".join(f"({i},{j})" for i, j in self.violations)
        return f"separated: no; objects sharing a region: {pairs}"


def validate_fence(inst: Instance, fence: Fence) -> SeparationReport:
    """Check that the fence leaves no two differently colored objects connected.

    Builds a fresh arrangement of fence and object edges, glues faces across
    every non-fence edge, and inspects the colors found in each glued region.
    """
    if not inst.objects:
        return SeparationReport(True)
    segments = [e for obj in inst.objects for e in obj.edges()] + list(fence.segments)
    arr = locate_object_faces(build_arrangement(canonicalize(segments)), inst)

    fence_boxes = [(s, s.bbox()) for s in fence.segments]

    def on_fence(e):
        m = arr.edge_segment(e).midpoint()
        return any(b[0] <= m.x <= b[2] and b[1] <= m.y <= b[3] and on_segment(m, s)
                   for s, b in fence_boxes)

    parent = list(range(len(arr.faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e, (f, g) in enumerate(arr.edge_faces):
        if not on_fence(e):
            parent[find(f)] = find(g)
    members: dict[int, list[int]] = defaultdict(list)
    for obj_id, face in sorted(arr.object_faces().items()):
        members[find(face)].append(obj_id)
    violations = []
    for objs in members.values():
        for a_pos, i in enumerate(objs):
            for j in objs[a_pos + 1:]:
                if inst.objects[i].color != inst.objects[j].color:
                    violations.append((min(i, j), max(i, j)))
    regions = len({find(f) for f in range(len(arr.faces))})
    return SeparationReport(not violations, sorted(violations), regions)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

PALETTE = ("#e41a1c", "#4daf4a", "#377eb8", "#ff7f00", "#984ea3",
           "#a65628", "#f781bf", "#999999", "#dede00")


def _polylines(segments) -> list[list[Point]]:
    """Chain segments into maximal walks, deterministically."""
    adj: dict[Point, list[Point]] = defaultdict(list)
    for s in segments:
        adj[s.a].append(s.b)
        adj[s.b].append(s.a)
    for p in adj:
        adj[p].sort()
    used: set[tuple[Point, Point]] = set()

    def take(p, q):
        used.add((p, q) if p < q else (q, p))

    def free_next(p):
        for q in adj[p]:
            if ((p, q) if p < q else (q, p)) not in used:
                return q
        return None

    # odd-degree vertices first so open chains start at their ends
    starts = sorted(adj, key=lambda p: (len(adj[p]) % 2 == 0, p))
    lines = []
    for start in starts:
        while (q := free_next(start)) is not None:
            line = [start]
            p = start
            while q is not None:
                take(p, q)
                line.append(q)
                p, q = q, free_next(q)
            lines.append(line)
    return lines


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def export_svg(inst: Instance, fence: Optional[Fence] = None,
               sink: Union[str, os.PathLike, BinaryIO, None] = None) -> bytes:
    """Render objects (filled by color) and the fence (black) as SVG 1.1.

    The y axis is flipped so the picture has the usual math orientation.
    """
    pts = [v for obj in inst.objects for v in obj.vertices]
    if fence is not None:
        pts += [p for s in fence.segments for p in (s.a, s.b)]
    if pts:
        x0, x1 = float(min(p.x for p in pts)), float(max(p.x for p in pts))
        y0, y1 = float(min(p.y for p in pts)), float(max(p.y for p in pts))
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    mx, my = 0.05 * w, 0.05 * h
    stroke = 0.005 * max(w, h)

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
              f'viewBox="{_fmt(x0 - mx)} {_fmt(-y1 - my)} {_fmt(w + 2 * mx)} {_fmt(h + 2 * my)}">\n')
    for i, obj in enumerate(inst.objects):
        d = " ".join(("M" if j == 0 else "L") + f"{_fmt(float(v.x))},{_fmt(-float(v.y))}"
                     for j, v in enumerate(obj.vertices)) + " Z"
        out.write(f'  <path id="object-{i}" fill="{PALETTE[obj.color % len(PALETTE)]}" d="{d}"/>\n')
    if fence is not None:
        for line in _polylines(fence.segments):
            coords = " ".join(f"{_fmt(float(p.x))},{_fmt(-float(p.y))}" for p in line)
            out.write(f'  <polyline fill="none" stroke="black" stroke-width="{stroke:.3g}" '
                      f'points="{coords}"/>\n')
    out.write("</svg>\n")
    data = out.getvalue().encode("utf-8")

    if sink is not None:
        try:
            if hasattr(sink, "write"):
                sink.write(data)
            else:
                with open(sink, "wb") as fh:
                    fh.write(data)
        except OSError as exc:
            raise SinkWriteFailure(str(exc)) from exc
    return data


def check_fence_total(fence: Fence) -> None:
    """Raise if the stored total disagrees with the segment lengths."""
    total = sum(euclid_length(s) for s in fence.segments)
    if abs(total - fence.total_length) > 1e-9 * max(1.0, total):
        raise InvariantViolation(f"fence total {fence.total_length} != {total}")
