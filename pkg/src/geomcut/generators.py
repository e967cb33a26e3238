"""Benchmark instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import isqrt

from .errors import BadThickness, GenerationTimeout
from .geom import Instance, Point, Polygon, cross, interiors_overlap, signed_area2

COORD_DENOMINATOR = 10**9


@dataclass(frozen=True)
class GeneratorParams:
    kind: str = "random"              # "random" or "lower_bound"
    grid_k: int = 1
    thickness: Fraction = Fraction(1, 100)
    seed: int = 0
    num_objects: int = 2
    num_colors: int = 2
    coordinate_range: int = 8

    def __post_init__(self):
        object.__setattr__(self, "thickness", Fraction(str(self.thickness))
                           if isinstance(self.thickness, (float, Decimal)) else Fraction(self.thickness))
        if self.kind not in ("random", "lower_bound"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.grid_k < 1:
            raise ValueError("grid_k must be >= 1")
        if self.kind == "random":
            if not 1 <= self.num_colors <= self.num_objects:
                raise ValueError("need 1 <= num_colors <= num_objects")
            if self.coordinate_range < 2:
                raise ValueError("coordinate_range must be >= 2")


def generate(params: GeneratorParams) -> Instance:
    if params.kind == "lower_bound":
        return gen_lower_bound(params.grid_k, params.thickness)
    return gen_random(params)


def _round(x: Fraction) -> Fraction:
    return Fraction(round(x * COORD_DENOMINATOR), COORD_DENOMINATOR)


def _sqrt3() -> Fraction:
    scale = 10**30
    return Fraction(isqrt(3 * scale * scale), scale)


def gen_lower_bound(grid_k: int, thickness) -> Instance:
    """Rhombic ``grid_k x grid_k`` patch of equilateral triangles of side sqrt(3).

    Each of the ``2 grid_k**2`` triangles holds three thin rectangles, one
    along each side and just inside it; a rectangle's color is the direction
    class of its side (0 horizontal, 1 rising at 60 degrees, 2 at 120
    degrees).  Coordinates are rounded to multiples of 1e-9.
    """
    t = Fraction(str(thickness)) if isinstance(thickness, (float, Decimal)) else Fraction(thickness)
    if not (0 < t <= Fraction(1, 20)):
        raise BadThickness(f"thickness must lie in (0, 0.05], got {thickness}")
    if grid_k < 1:
        raise ValueError("grid_k must be >= 1")
    s3 = _sqrt3()
    gap = t / 2          # distance between a rectangle and its triangle side
    inset = 3 * t        # distance between a rectangle end and the triangle corner
    ax, ay = s3, Fraction(0)
    bx, by = s3 / 2, Fraction(3, 2)

    def lattice(i, j):
        return (i * ax + j * bx, i * ay + j * by)

    def add(p, q):
        return (p[0] + q[0], p[1] + q[1])

    objects = []
    for j in range(grid_k):
        for i in range(grid_k):
            p = lattice(i, j)
            up = [(p, add(p, (ax, ay)), 0), (add(p, (ax, ay)), add(p, (bx, by)), 2),
                  (add(p, (bx, by)), p, 1)]
            pa = add(p, (ax, ay))
            down = [(pa, add(pa, (bx, by)), 1), (add(pa, (bx, by)), add(p, (bx, by)), 0),
                    (add(p, (bx, by)), pa, 2)]
            for a, b, color in up + down:
                # unit direction along the side (|side| = sqrt 3) and its left normal
                ux, uy = (b[0] - a[0]) / s3, (b[1] - a[1]) / s3
                nx, ny = -uy, ux
                corners = [
                    (a[0] + inset * ux + gap * nx, a[1] + inset * uy + gap * ny),
                    (b[0] - inset * ux + gap * nx, b[1] - inset * uy + gap * ny),
                    (b[0] - inset * ux + (gap + t) * nx, b[1] - inset * uy + (gap + t) * ny),
                    (a[0] + inset * ux + (gap + t) * nx, a[1] + inset * uy + (gap + t) * ny),
                ]
                verts = tuple(Point(_round(x), _round(y)) for x, y in corners)
                objects.append(Polygon(verts, color))
    return Instance(3, tuple(objects))


def _convex_hull(points: list[Point]) -> list[Point]:
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _random_shape(rng: random.Random, span: int) -> list[Point]:
    size = max(1, span // 3)
    if rng.random() < 0.5:
        w, h = rng.randint(1, size), rng.randint(1, size)
        x, y = rng.randint(0, span - w), rng.randint(0, span - h)
        return [Point(Fraction(x), Fraction(y)), Point(Fraction(x + w), Fraction(y)),
                Point(Fraction(x + w), Fraction(y + h)), Point(Fraction(x), Fraction(y + h))]
    x0, y0 = rng.randint(0, span - size), rng.randint(0, span - size)
    count = rng.choice((3, 3, 4))
    pts = [Point(Fraction(x0 + rng.randint(0, size)), Fraction(y0 + rng.randint(0, size)))
           for _ in range(count)]
    return _convex_hull(pts)


def gen_random(params: GeneratorParams, max_attempts: int = 10_000) -> Instance:
    """Seeded rectangles and small convex polygons with integer corners.

    Shapes are rejection-sampled until their interiors are pairwise
    disjoint; object ``i`` gets color ``i % num_colors``.
    """
    rng = random.Random(params.seed)
    placed: list[Polygon] = []
    attempts = 0
    while len(placed) < params.num_objects:
        attempts += 1
        if attempts > max_attempts:
            raise GenerationTimeout(
                f"placed {len(placed)} of {params.num_objects} objects in {max_attempts} attempts")
        verts = _random_shape(rng, params.coordinate_range)
        if len(verts) < 3 or signed_area2(verts) <= 0:
            continue
        candidate = Polygon(tuple(verts), len(placed) % params.num_colors)
        if any(interiors_overlap(candidate, other) for other in placed):
            continue
        placed.append(candidate)
    return Instance(params.num_colors, tuple(placed))
