"""Acceptance gate: one recorded pass/fail line per criterion."""

import math
import random
import time

import pytest

from geomcut.arrangement import build_arrangement
from geomcut.cut_solvers import (DEFAULT_ORACLE_BUDGET, brute_force_labeling, exact_labeling,
                                 isolation_heuristic, lp_lower_bound, max_flow_min_cut, prepare,
                                 separates, solve)
from geomcut.dual_graph import add_apexes
from geomcut.fence import extract_fence, validate_fence
from geomcut.generators import GeneratorParams, gen_lower_bound, gen_random
from geomcut.geom import Instance, euclid_length, on_segment, seg
from geomcut.steiner_dp import brute_force_duplication, min_duplication, parse_tree, random_full_tree
from geomcut.visibility import corner_index

from conftest import record, square

SQRT3 = math.sqrt(3)


def free_count(g):
    return g.num_nodes - sum(len(t) for t in g.terminals.values())


def lower_bound_ratio(grid_k):
    inst = gen_lower_bound(grid_k, "0.01")
    prep = prepare(inst)
    value = exact_labeling(prep.dual, 3).value
    f_star = 6 * grid_k**2 + 2 * grid_k * SQRT3
    return inst, prep, value, value / f_star


def test_c1_flow_matches_oracle_k2():
    checked, worst, slowest = 0, 0.0, 0.0
    for seed in range(1000):
        inst = gen_random(GeneratorParams(seed=seed, num_objects=2 + seed % 3, num_colors=2))
        if len(corner_index(inst)) > 20:
            continue
        t0 = time.perf_counter()
        g = prepare(inst).dual
        if g.num_nodes > 25:
            continue
        flow = max_flow_min_cut(g, g.terminals[0], g.terminals[1]).value
        t1 = time.perf_counter()
        oracle = brute_force_labeling(g, 2).value
        t2 = time.perf_counter()
        worst = max(worst, abs(flow - oracle) / max(1.0, oracle))
        slowest = max(slowest, t1 - t0, t2 - t1)
        checked += 1
        if checked == 100:
            break
    ok = checked >= 100 and worst <= 1e-9 and slowest < 10
    record("C1 flow = brute force (k=2)", ok,
           f"{checked} instances, max rel diff {worst:.1e}, slowest solve {slowest:.2f}s")
    assert ok


def test_c2_two_squares():
    inst = Instance(2, (square(0, 0, 0), square(3, 0, 1)))
    fence = solve(inst)
    ok = abs(fence.total_length - 4.0) <= 1e-9 and fence.is_single_cycle()
    record("C2 two-squares benchmark", ok,
           f"length {fence.total_length:.9f}, single cycle {fence.is_single_cycle()}")
    assert ok


def test_c3_isolation_ratio_k3():
    ratios, checked = [], 0
    agree = True
    for seed in range(1000):
        inst = gen_random(GeneratorParams(seed=seed, num_objects=3, num_colors=3, coordinate_range=6))
        g = prepare(inst).dual
        if 3 ** free_count(g) > DEFAULT_ORACLE_BUDGET:
            continue
        oracle = brute_force_labeling(g, 3).value
        iso = isolation_heuristic(add_apexes(g, 3)).value
        # the integer program stands in for brute force on larger graphs; keep it honest here
        agree &= abs(exact_labeling(g, 3).value - oracle) <= 1e-9 * max(1.0, oracle)
        ratios.append(iso / oracle if oracle > 0 else 1.0)
        checked += 1
        if checked == 50:
            break
    bound = 2 - 2 / 3 + 1e-9
    ok = checked >= 50 and all(1 - 1e-9 <= r <= bound for r in ratios) and agree
    record("C3 isolation ratio (k=3)", ok,
           f"{checked} instances, ratio range [{min(ratios):.4f}, {max(ratios):.4f}], ILP = brute force: {agree}")
    assert ok


def test_c4_lower_bound_instance():
    t0 = time.perf_counter()
    inst, prep, value, ratio = lower_bound_ratio(1)
    elapsed = time.perf_counter() - t0
    target = 6 * SQRT3
    ok = abs(value - target) <= 0.05 * target and ratio > 1.05 and elapsed < 60
    assert validate_fence(inst, extract_fence(prep.arrangement, exact_labeling(prep.dual, 3))).valid
    record("C4 lower-bound grid_k=1", ok,
           f"F_A {value:.4f} vs 6*sqrt3 {target:.4f} ({(value / target - 1) * 100:+.2f}%), "
           f"ratio {ratio:.4f}, {elapsed:.1f}s (f={free_count(prep.dual)}, exact ILP)")
    assert ok


@pytest.mark.slow
def test_c4_ratio_trend():
    # grid_k=2 is beyond the integer program, so its F_A is bracketed by the
    # LP relaxation (below) and the isolation heuristic (above)
    _, _, _, r1 = lower_bound_ratio(1)
    t0 = time.perf_counter()
    g = prepare(gen_lower_bound(2, "0.01")).dual
    upper = isolation_heuristic(add_apexes(g, 3)).value
    lower = lp_lower_bound(g, 3)
    f_star = 6 * 4 + 2 * 2 * SQRT3
    ok = lower / f_star > r1 and lower <= upper * (1 + 1e-6)
    record("C4 ratio trend grid_k=1 -> 2", ok,
           f"ratio {r1:.4f} -> at least {lower / f_star:.4f} (F_A in [{lower:.4f}, {upper:.4f}], "
           f"{g.num_nodes} faces, {time.perf_counter() - t0:.0f}s)")
    assert ok


def test_c5_steiner_dp():
    rng = random.Random(2024)
    worst, bound_ok, count = 0.0, True, 0
    while count < 200:
        t = random_full_tree(rng, rng.randint(2, 7))
        assert len(t.edges()) <= 12
        dp, bf = min_duplication(t).cost, brute_force_duplication(t).cost
        worst = max(worst, abs(dp - bf) / max(1.0, bf))
        bound_ok &= dp <= t.total_length() / 3 + 1e-9
        count += 1
    star = min_duplication(parse_tree("(a:1,b:1,c:1)")).cost
    ok = worst <= 1e-9 and bound_ok and star == 1.0
    record("C5 Steiner DP", ok, f"{count} trees, max rel diff {worst:.1e}, |T|/3 bound {bound_ok}, K13 {star}")
    assert ok


def test_c6_structural_invariants():
    euler = weights = fences = apex = True
    runs = 0
    for seed in range(40):
        k = 2 + seed % 2
        inst = gen_random(GeneratorParams(seed=seed, num_objects=k, num_colors=k, coordinate_range=6))
        prep = prepare(inst)
        arr, g = prep.arrangement, prep.dual
        euler &= arr.euler_ok()
        weights &= abs(g.total_weight() - arr.total_length()) <= 1e-9 * arr.total_length()
        fences &= validate_fence(inst, solve(inst)).valid
        if k == 3:
            cut = isolation_heuristic(add_apexes(g, 3))
            apex &= all(i < len(g.edges) for i in cut.edges) and separates(g, cut)
        runs += 1
    euler &= build_arrangement([seg(0, 0, 2, 2), seg(0, 2, 2, 0)]).euler_ok()
    ok = euler and weights and fences and apex
    record("C6 structural invariants", ok,
           f"{runs} instances: Euler {euler}, weight sums {weights}, fences valid {fences}, no apex edges {apex}")
    assert ok


def test_c7_degenerate_cases():
    single = solve(Instance(2, (square(0, 0, 0),)))
    mono = solve(Instance(3, (square(0, 0, 1), square(3, 0, 1))))
    shared_inst = Instance(2, (square(0, 0, 0, 2), square(2, 0, 1, 2)))
    shared = solve(shared_inst)
    edge = seg(2, 0, 2, 2)
    on_edge = sum(euclid_length(s) for s in shared.segments if on_segment(s.a, edge) and on_segment(s.b, edge))
    covers = abs(on_edge - 2.0) <= 1e-9
    ok = (single.total_length == 0 and single.segments == () and mono.total_length == 0
          and covers and shared.total_length >= 2.0 and validate_fence(shared_inst, shared).valid)
    record("C7 degenerate cases", ok,
           f"single object {single.total_length}, one color {mono.total_length}, "
           f"shared edge L=2 covered {covers} with cost {shared.total_length:.4f}")
    assert ok


def test_c8_not_reproduced():
    record("C8 hardness and running-time claims", True,
           "not reproduced by design; C1 checks optimality, C1's 10 s cap is the performance gate")
