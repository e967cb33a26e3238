"""Planar subdivision induced by a set of segments.

Half-edge layout: arrangement edge ``e = (u, v)`` with ``u < v`` owns the
half-edges ``2e`` (u -> v) and ``2e + 1`` (v -> u).  A half-edge bounds the
face on its left.  Face 0 is always the unbounded face.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from .errors import DegenerateInput, InvariantViolation, ObjectFaceNotFound
from .geom import (Instance, Location, Point, Segment, cross, euclid_length,
                   param_on, point_in_polygon, segment_intersection, signed_area2,
                   winding_number)
from .visibility import SegmentSet


@dataclass(frozen=True)
class Face:
    id: int
    object: Optional[int]
    representative_point: Point
    outer: Optional[tuple[int, ...]]       # half-edge cycle, None for the unbounded face
    holes: tuple[tuple[int, ...], ...]     # inner boundary cycles

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return self.holes if self.outer is None else (self.outer,) + self.holes


@dataclass(frozen=True)
class Arrangement:
    vertices: tuple[Point, ...]
    edges: tuple[tuple[int, int, float], ...]
    faces: tuple[Face, ...]
    edge_faces: tuple[tuple[int, int], ...]   # (face left of u->v, face left of v->u)
    outer_face: int
    num_components: int

    def edge_segment(self, e: int) -> Segment:
        u, v, _ = self.edges[e]
        return Segment(self.vertices[u], self.vertices[v])

    def half_edge_origin(self, h: int) -> int:
        u, v, _ = self.edges[h >> 1]
        return v if h & 1 else u

    def object_faces(self) -> dict[int, int]:
        return {f.object: f.id for f in self.faces if f.object is not None}

    def euler_ok(self) -> bool:
        return len(self.vertices) - len(self.edges) + len(self.faces) == 1 + self.num_components

    def total_length(self) -> float:
        return sum(e[2] for e in self.edges)


def _direction_cmp(d1: tuple[Fraction, Fraction], d2: tuple[Fraction, Fraction]) -> int:
    """Counterclockwise order of directions, starting at angle 0 (inclusive)."""
    h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
    h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _split_points(segs: tuple[Segment, ...]) -> list[list[Point]]:
    """Points (sorted along each segment) where it meets any other segment."""
    params: list[set[Fraction]] = [{Fraction(0), Fraction(1)} for _ in segs]
    boxes = [s.bbox() for s in segs]
    order = sorted(range(len(segs)), key=lambda i: boxes[i][0])
    for pos, i in enumerate(order):
        xmax_i = boxes[i][2]
        for j in order[pos + 1:]:
            if boxes[j][0] > xmax_i:
                break
            if boxes[j][1] > boxes[i][3] or boxes[i][1] > boxes[j][3]:
                continue
            hit = segment_intersection(segs[i], segs[j])
            if hit is None:
                continue
            if isinstance(hit, Segment):
                raise InvariantViolation(f"overlapping input segments {segs[i]} and {segs[j]}")
            params[i].add(param_on(segs[i], hit))
            params[j].add(param_on(segs[j], hit))
    out = []
    for s, ts in zip(segs, params):
        dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
        out.append([Point(s.a.x + t * dx, s.a.y + t * dy) for t in sorted(ts)])
    return out


def _ray_point(origin: Point, normal: tuple[Fraction, Fraction], arr_vertices, edges, candidates) -> Point:
    """Point halfway between origin and the first candidate edge hit by the ray."""
    nx, ny = normal
    best: Optional[Fraction] = None
    for e in candidates:
        u, v, _ = edges[e]
        p, q = arr_vertices[u], arr_vertices[v]
        ex, ey = q.x - p.x, q.y - p.y
        wx, wy = p.x - origin.x, p.y - origin.y
        denom = nx * ey - ny * ex
        if denom != 0:
            t = (wx * ey - wy * ex) / denom
            s = (wx * ny - wy * nx) / denom
            if t > 0 and 0 <= s <= 1 and (best is None or t < best):
                best = t
        elif wx * ny - wy * nx == 0:
            nn = nx * nx + ny * ny
            for tx, ty in ((wx, wy), (q.x - origin.x, q.y - origin.y)):
                t = (tx * nx + ty * ny) / nn
                if t > 0 and (best is None or t < best):
                    best = t
    half = Fraction(1) if best is None else best / 2
    return Point(origin.x + half * nx, origin.y + half * ny)


def build_arrangement(S: SegmentSet | tuple[Segment, ...] | list[Segment]) -> Arrangement:
    segs = tuple(S.segments if isinstance(S, SegmentSet) else S)
    if not segs:
        raise DegenerateInput("empty segment set")

    chains = _split_points(segs)
    vertices = sorted({p for chain in chains for p in chain})
    vid = {p: i for i, p in enumerate(vertices)}
    edge_set = set()
    for chain in chains:
        for p, q in zip(chain, chain[1:]):
            a, b = vid[p], vid[q]
            edge_set.add((a, b) if a < b else (b, a))
    edge_pairs = sorted(edge_set)
    edges = tuple((u, v, euclid_length(Segment(vertices[u], vertices[v]))) for u, v in edge_pairs)

    def origin(h):
        u, v = edge_pairs[h >> 1]
        return v if h & 1 else u

    def target(h):
        u, v = edge_pairs[h >> 1]
        return u if h & 1 else v

    # outgoing half-edges around each vertex, counterclockwise
    outgoing: list[list[int]] = [[] for _ in vertices]
    for e, (u, v) in enumerate(edge_pairs):
        outgoing[u].append(2 * e)
        outgoing[v].append(2 * e + 1)

    def direction(h):
        a, b = vertices[origin(h)], vertices[target(h)]
        return (b.x - a.x, b.y - a.y)

    position = {}
    for hs in outgoing:
        hs.sort(key=cmp_to_key(lambda h1, h2: _direction_cmp(direction(h1), direction(h2))))
        for i, h in enumerate(hs):
            position[h] = i

    n_half = 2 * len(edges)
    nxt = [0] * n_half
    for h in range(n_half):
        twin = h ^ 1
        around = outgoing[target(h)]
        # next boundary edge is the one just clockwise of the twin
        nxt[h] = around[position[twin] - 1]

    # trace cycles
    cycle_of = [-1] * n_half
    cycles: list[tuple[int, ...]] = []
    for h0 in range(n_half):
        if cycle_of[h0] != -1:
            continue
        cyc = []
        h = h0
        while cycle_of[h] == -1:
            cycle_of[h] = len(cycles)
            cyc.append(h)
            h = nxt[h]
        cycles.append(tuple(cyc))

    # connected components
    parent = list(range(len(vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edge_pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    comp_of_vertex = [find(i) for i in range(len(vertices))]
    num_components = len(set(comp_of_vertex))

    rings = [[vertices[origin(h)] for h in cyc] for cyc in cycles]
    areas = [signed_area2(r) for r in rings]
    bounded = [c for c in range(len(cycles)) if areas[c] > 0]
    outer_boundaries = [c for c in range(len(cycles)) if areas[c] <= 0]
    if len(outer_boundaries) != num_components:
        raise InvariantViolation("expected one outer boundary cycle per component")

    # face ids: 0 unbounded, then bounded cycles in trace order
    face_of_cycle = {c: i + 1 for i, c in enumerate(bounded)}
    holes: dict[int, list[int]] = {0: []}
    bboxes = {}
    for c in bounded:
        xs = [p.x for p in rings[c]]
        ys = [p.y for p in rings[c]]
        bboxes[c] = (min(xs), min(ys), max(xs), max(ys))
    for c in outer_boundaries:
        comp = comp_of_vertex[origin(cycles[c][0])]
        probe = vertices[origin(cycles[c][0])]
        container, container_area = None, None
        for b in bounded:
            if comp_of_vertex[origin(cycles[b][0])] == comp:
                continue
            x0, y0, x1, y1 = bboxes[b]
            if not (x0 < probe.x < x1 and y0 < probe.y < y1):
                continue
            if winding_number(probe, rings[b]) != 0 and (container is None or areas[b] < container_area):
                container, container_area = b, areas[b]
        f = 0 if container is None else face_of_cycle[container]
        face_of_cycle[c] = f
        holes.setdefault(f, []).append(c)

    num_faces = len(bounded) + 1
    half_face = [face_of_cycle[cycle_of[h]] for h in range(n_half)]
    edge_faces = tuple((half_face[2 * e], half_face[2 * e + 1]) for e in range(len(edges)))

    # representative points
    face_cycles: dict[int, list[int]] = {0: []}
    for c in bounded:
        face_cycles[face_of_cycle[c]] = [c]
    for f, hs in holes.items():
        face_cycles.setdefault(f, []).extend(hs)
    faces = []
    for f in range(num_faces):
        cyc_ids = face_cycles.get(f, [])
        if f == 0:
            outer = None
            hole_ids = cyc_ids
        else:
            outer = cycles[cyc_ids[0]]
            hole_ids = cyc_ids[1:]
        boundary_edges = sorted({h >> 1 for c in cyc_ids for h in cycles[c]})
        h = cycles[cyc_ids[0]][0]
        a, b = vertices[origin(h)], vertices[target(h)]
        mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        normal = (a.y - b.y, b.x - a.x)  # left of a->b
        rep = _ray_point(mid, normal, vertices, edges, [e for e in boundary_edges if e != h >> 1])
        faces.append(Face(f, None, rep, outer, tuple(cycles[c] for c in hole_ids)))

    arr = Arrangement(tuple(vertices), edges, tuple(faces), edge_faces, 0, num_components)
    if not arr.euler_ok():
        raise InvariantViolation(
            f"Euler relation failed: V={len(vertices)} E={len(edges)} F={num_faces} C={num_components}")
    return arr


def locate_object_faces(arr: Arrangement, inst: Instance) -> Arrangement:
    """Tag, for every object, the single face whose sample point lies inside it."""
    owner: dict[int, int] = {}
    for oi, obj in enumerate(inst.objects):
        x0, y0, x1, y1 = obj.bbox()
        hits = [f.id for f in arr.faces
                if f.id != arr.outer_face
                and x0 < f.representative_point.x < x1 and y0 < f.representative_point.y < y1
                and point_in_polygon(f.representative_point, obj) is Location.INTERIOR]
        if len(hits) != 1:
            raise ObjectFaceNotFound(f"object {oi}: {len(hits)} candidate faces")
        if hits[0] in owner:
            raise ObjectFaceNotFound(f"objects {owner[hits[0]]} and {oi} map to face {hits[0]}")
        owner[hits[0]] = oi
    faces = tuple(dataclasses.replace(f, object=owner.get(f.id)) for f in arr.faces)
    return dataclasses.replace(arr, faces=faces)


def face_boundary_length(arr: Arrangement, f: int) -> float:
    return sum(arr.edges[h >> 1][2] for cyc in arr.faces[f].cycles() for h in cyc)


def dump(arr: Arrangement) -> str:
    """Line-oriented text listing used for golden-file comparisons.

    Format::

        V <count>
        v <id> <x> <y>
        E <count>
        e <id> <u> <v> <length>
        F <count> outer=<id>
        f <id> <object or -> <rep x> <rep y> <left-of half-edges, space separated>
    """
    lines = [f"V {len(arr.vertices)}"]
    lines += [f"v {i} {p.x} {p.y}" for i, p in enumerate(arr.vertices)]
    lines.append(f"E {len(arr.edges)}")
    lines += [f"e {i} {u} {v} {length:.12f}" for i, (u, v, length) in enumerate(arr.edges)]
    lines.append(f"F {len(arr.faces)} outer={arr.outer_face}")
    for f in arr.faces:
        obj = "-" if f.object is None else str(f.object)
        hs = " ".join(str(h) for cyc in f.cycles() for h in cyc)
        rp = f.representative_point
        lines.append(f"f {f.id} {obj} {rp.x} {rp.y} {hs}")
    return "\n".join(lines) + "\n"
