from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geomcut.geom import (Instance, Location, Point, Polygon, Segment, euclid_length,
                          interiors_overlap, orientation, point_in_polygon, pt, seg,
                          segment_intersection, validate_instance)

from conftest import rect, square

coord = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.builds(Point, coord, coord)


@pytest.mark.parametrize("p,q,r,expected", [
    ((0, 0), (1, 0), (0, 1), 1),
    ((0, 0), (1, 0), (2, 0), 0),
    ((0, 0), (1, 0), (1, -1), -1),
])
def test_orientation_examples(p, q, r, expected):
    assert orientation(pt(*p), pt(*q), pt(*r)) == expected


@given(points, points, points, coord, coord)
def test_orientation_antisymmetric_and_translation_invariant(p, q, r, dx, dy):
    assert orientation(p, q, r) == -orientation(p, r, q)
    moved = [Point(a.x + dx, a.y + dy) for a in (p, q, r)]
    assert orientation(*moved) == orientation(p, q, r)


def test_segment_intersection_examples():
    assert segment_intersection(seg(0, 0, 2, 2), seg(0, 2, 2, 0)) == pt(1, 1)
    assert segment_intersection(seg(0, 0, 1, 0), seg(0, 1, 1, 1)) is None
    assert segment_intersection(seg(0, 0, 2, 0), seg(1, 0, 3, 0)) == seg(1, 0, 2, 0)


def test_segment_intersection_touching_and_rational():
    assert segment_intersection(seg(0, 0, 1, 0), seg(1, 0, 1, 5)) == pt(1, 0)
    assert segment_intersection(seg(0, 0, 1, 0), seg(2, 0, 3, 0)) is None
    assert segment_intersection(seg(0, 0, 3, 1), seg(0, 1, 3, 0)) == Point(Fraction(3, 2), Fraction(1, 2))


@given(points, points, points, points)
def test_segment_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    s, t = Segment(a, b), Segment(c, d)
    r1, r2 = segment_intersection(s, t), segment_intersection(t, s)
    assert r1 == r2
    if isinstance(r1, Point):
        # the point lies on both segments (exact check)
        for x in (s, t):
            assert orientation(x.a, x.b, r1) == 0


def test_point_in_polygon_examples():
    unit = square(0, 0, 0)
    assert point_in_polygon(pt("0.5", "0.5"), unit) is Location.INTERIOR
    assert point_in_polygon(pt(1, "0.5"), unit) is Location.BOUNDARY
    assert point_in_polygon(pt(2, 2), unit) is Location.EXTERIOR
    assert point_in_polygon(pt(0, 0), unit) is Location.BOUNDARY


def test_point_in_nonconvex_polygon():
    ell = Polygon(tuple(pt(*v) for v in [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]), 0)
    assert ell.locate(pt("1.5", "1.5")) is Location.EXTERIOR
    assert ell.locate(pt("0.5", "1.5")) is Location.INTERIOR
    assert ell.locate(pt(1, "1.5")) is Location.BOUNDARY
    # ray through the reflex vertex
    assert ell.locate(pt("0.5", 1)) is Location.INTERIOR


def test_euclid_length_examples():
    assert euclid_length(seg(0, 0, 3, 4)) == 5.0
    assert euclid_length(seg(0, 0, 1, 0)) == 1.0
    assert euclid_length(seg(0, 0, 1, 1)) == 1.4142135623730951


@given(points, points, coord, coord, st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8))
def test_euclid_length_translation_and_scaling(a, b, dx, dy, s):
    if a == b:
        return
    base = euclid_length(Segment(a, b))
    moved = euclid_length(Segment(Point(a.x + dx, a.y + dy), Point(b.x + dx, b.y + dy)))
    grown = euclid_length(Segment(Point(a.x * s, a.y * s), Point(b.x * s, b.y * s)))
    assert moved == pytest.approx(base, rel=1e-12)
    assert grown == pytest.approx(base * float(s), rel=1e-12)


def test_zero_length_segment_rejected():
    with pytest.raises(ValueError):
        seg(1, 1, 1, 1)


def test_clockwise_polygon_is_reversed_with_warning():
    with pytest.warns(UserWarning):
        p = Polygon((pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)), 0)
    assert p.area() == 1


def test_validate_accepts_disjoint_squares(two_squares):
    assert validate_instance(two_squares).valid


def test_validate_examples():
    bowtie = Polygon((pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 3)), 0)
    report = validate_instance(Instance(1, (bowtie,)))
    assert report.kinds() == {"NonSimplePolygon"}
    assert report.violations[0].objects == (0,)

    overlap = Instance(2, (square(0, 0, 0), square("0.5", "0.5", 1)))
    report = validate_instance(overlap)
    assert report.kinds() == {"OverlappingInteriors"}
    assert report.violations[0].objects == (0, 1)


def test_validate_other_violations():
    line = Polygon((pt(0, 0), pt(1, 0), pt(2, 0)), 0)
    two = Polygon((pt(0, 0), pt(1, 0)), 0)
    report = validate_instance(Instance(1, (line, two, square(5, 5, 3))))
    assert report.kinds() == {"ZeroAreaPolygon", "TooFewVertices", "BadColorIndex"}
    assert {v.kind: v.objects for v in report.violations}["BadColorIndex"] == (2,)


def test_overlap_cases():
    big = rect(0, 0, 4, 4, 0)
    assert interiors_overlap(big, square(1, 1, 1))          # containment
    assert interiors_overlap(big, rect(0, 0, 4, 4, 1))      # identical
    assert not interiors_overlap(big, square(4, 0, 1))      # shared edge piece
    assert not interiors_overlap(big, square(4, 4, 1))      # shared corner
    cross_a = rect(0, 1, 3, 2, 0)
    cross_b = rect(1, 0, 2, 3, 1)
    assert interiors_overlap(cross_a, cross_b)              # plus sign: no vertex inside the other


@given(st.integers(0, 6), st.integers(0, 6), st.integers(1, 3), st.integers(1, 3))
def test_validated_pairs_never_overlap(x, y, w, h):
    """Validation passing implies the exact overlap test is false for every pair."""
    a = rect(2, 2, 5, 4, 0)
    b = rect(x, y, x + w, y + h, 1)
    report = validate_instance(Instance(2, (a, b)))
    # independent check on the integer grid: overlap iff the open boxes intersect
    boxes_meet = max(2, x) < min(5, x + w) and max(2, y) < min(4, y + h)
    assert report.valid == (not boxes_meet)
