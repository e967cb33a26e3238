import pytest
from hypothesis import given, strategies as st

from geomcut.arrangement import build_arrangement, face_boundary_length, locate_object_faces
from geomcut.dual_graph import add_apexes, build_dual
from geomcut.errors import EmptyColorClassWarning
from geomcut.generators import GeneratorParams, gen_random
from geomcut.geom import Instance, Polygon, pt
from geomcut.visibility import canonicalize, free_segments

from conftest import square


def dual_of(inst, edges_only=False):
    segs = canonicalize([e for o in inst.objects for e in o.edges()]) if edges_only else free_segments(inst)
    arr = locate_object_faces(build_arrangement(segs), inst)
    return arr, build_dual(arr, inst)


def test_single_square():
    _, g = dual_of(Instance(1, (square(0, 0, 0),)))
    assert g.num_nodes == 2
    assert [(e.u, e.v, e.weight) for e in g.edges] == [(0, 1, 4.0)]
    assert g.terminals == {0: frozenset({1})}


def test_triangle_weight_is_perimeter():
    _, g = dual_of(Instance(1, (Polygon((pt(0, 0), pt(3, 0), pt(0, 4)), 0),)))
    assert len(g.edges) == 1 and g.edges[0].weight == 12.0


def test_square_faces_weight_matches_boundary(two_squares):
    arr, g = dual_of(two_squares)
    for obj, face in arr.object_faces().items():
        incident = sum(e.weight for e in g.edges if face in (e.u, e.v) and not e.is_loop)
        assert incident == pytest.approx(face_boundary_length(arr, face)) == pytest.approx(4.0)


def test_apex_weight_object_edges_only(two_squares):
    _, g = dual_of(two_squares, edges_only=True)
    assert g.total_weight() == 8.0
    ag = add_apexes(g, 2)
    assert ag.apex_weight == 9.0
    full = ag.as_graph()
    apex_edges = full.edges[len(g.edges):]
    assert sorted((e.u, e.v) for e in apex_edges) == sorted(
        (ag.apex[c], v) for c in (0, 1) for v in g.terminals[c])
    assert all(e.weight == 9.0 for e in apex_edges)


def test_apex_weight_full_arrangement(two_squares):
    arr, g = dual_of(two_squares)
    # derived: total free-segment length (from the arrangement) + 1
    assert add_apexes(g, 2).apex_weight == pytest.approx(arr.total_length() + 1.0, rel=1e-12)


def test_single_color_and_unused_color(three_squares):
    _, g = dual_of(Instance(1, (square(0, 0, 0),)))
    assert add_apexes(g, 1).num_colors == 1
    two_used = Instance(3, three_squares.objects[:2])
    _, g = dual_of(two_used)
    with pytest.warns(EmptyColorClassWarning):
        ag = add_apexes(g, 3)
    assert not any(e.u == ag.apex[2] or e.v == ag.apex[2] for e in ag.as_graph().edges)


def test_shared_boundary_is_ordinary_edge():
    inst = Instance(2, (square(0, 0, 0), square(1, 0, 1)))
    arr, g = dual_of(inst)
    f0, f1 = arr.object_faces()[0], arr.object_faces()[1]
    shared = [e for e in g.edges if {e.u, e.v} == {f0, f1}]
    assert len(shared) == 1 and shared[0].weight == 1.0


@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3))
def test_dual_invariants(seed, n, k):
    inst = gen_random(GeneratorParams(seed=seed, num_objects=max(n, k), num_colors=k, coordinate_range=6))
    arr, g = dual_of(inst)
    assert g.total_weight() == pytest.approx(arr.total_length(), rel=1e-9)
    prov = sorted(a for e in g.edges for a in e.provenance)
    assert prov == list(range(len(arr.edges)))
    assert all(e.weight >= 0 for e in g.edges)
    seen = set()
    for nodes in g.terminals.values():
        assert not (seen & nodes)
        seen |= nodes
    ag = add_apexes(g, k)
    assert ag.apex_weight > g.total_weight()
    apexes = set(ag.apex.values())
    assert not any(e.u in apexes and e.v in apexes for e in ag.as_graph().edges)
