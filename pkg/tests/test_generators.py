import math
import pytest
from hypothesis import given, strategies as st

from geomcut.errors import BadThickness, GenerationTimeout
from geomcut.generators import GeneratorParams, gen_lower_bound, gen_random, generate
from geomcut.geom import validate_instance
from geomcut.io import serialize_instance
from geomcut.visibility import corner_index

SEED1 = b"""{
  "num_colors": 2,
  "objects": [
    {"color": 0, "vertices": [["1", "3"], ["2", "3"], ["2", "5"], ["1", "5"]]},
    {"color": 1, "vertices": [["3", "5"], ["4", "5"], ["4", "6"]]}
  ]
}
"""


def test_seed_one_is_stable():
    inst = gen_random(GeneratorParams(seed=1, num_objects=2, num_colors=2))
    assert serialize_instance(inst) == SEED1
    assert serialize_instance(gen_random(GeneratorParams(seed=1))) == SEED1


def test_seed_two_three_colors_valid():
    inst = gen_random(GeneratorParams(seed=2, num_objects=3, num_colors=3))
    assert validate_instance(inst).valid
    assert [o.color for o in inst.objects] == [0, 1, 2]


def test_lower_bound_counts():
    one = gen_lower_bound(1, "0.01")
    assert len(one.objects) == 6 and one.num_colors == 3
    assert len(corner_index(one)) == 24
    two = generate(GeneratorParams(kind="lower_bound", grid_k=2, thickness="0.01"))
    assert len(two.objects) == 24 and len(corner_index(two)) == 96
    assert validate_instance(two).valid


def test_lower_bound_rectangle_shape():
    t = 0.01
    inst = gen_lower_bound(1, t)
    for obj in inst.objects:
        v = [(float(p.x), float(p.y)) for p in obj.vertices]
        sides = sorted(math.dist(v[i], v[(i + 1) % 4]) for i in range(4))
        assert sides[0] == pytest.approx(t, abs=3e-9) and sides[1] == pytest.approx(t, abs=3e-9)
        assert sides[2] == pytest.approx(math.sqrt(3) - 6 * t, abs=3e-9)
        for p in obj.vertices:
            assert (p.x * 10**9).denominator == 1 and (p.y * 10**9).denominator == 1
    # each triangle carries one rectangle of every color
    assert sorted(o.color for o in inst.objects[:3]) == [0, 1, 2]
    assert sorted(o.color for o in inst.objects[3:]) == [0, 1, 2]


@pytest.mark.parametrize("t", ["0", "-0.01", "0.06"])
def test_bad_thickness(t):
    with pytest.raises(BadThickness):
        gen_lower_bound(1, t)


def test_generation_timeout():
    with pytest.raises(GenerationTimeout):
        gen_random(GeneratorParams(seed=0, num_objects=40, num_colors=2, coordinate_range=3), max_attempts=200)


def test_params_validation():
    with pytest.raises(ValueError):
        GeneratorParams(num_objects=2, num_colors=3)
    with pytest.raises(ValueError):
        GeneratorParams(kind="spiral")


def test_hundred_default_seeds_fit_the_oracle():
    from geomcut.cut_solvers import DEFAULT_ORACLE_BUDGET, prepare
    for seed in range(100):
        inst = gen_random(GeneratorParams(seed=seed))
        assert validate_instance(inst).valid
        g = prepare(inst).dual
        f = g.num_nodes - sum(len(t) for t in g.terminals.values())
        assert 2 ** f <= DEFAULT_ORACLE_BUDGET


@given(st.integers(0, 2**63 - 1), st.integers(1, 4), st.integers(1, 4))
def test_random_instances_valid_and_deterministic(seed, n, k):
    params = GeneratorParams(seed=seed, num_objects=max(n, k), num_colors=k)
    inst = gen_random(params)
    assert validate_instance(inst).valid
    assert serialize_instance(inst) == serialize_instance(gen_random(params))
    assert [o.color for o in inst.objects] == [i % k for i in range(len(inst.objects))]
