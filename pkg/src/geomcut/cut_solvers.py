"""Minimum and approximate multiterminal cuts on the dual graph, plus the
end-to-end solver that turns an instance into a fence."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .arrangement import Arrangement, build_arrangement, locate_object_faces
from .dual_graph import AugmentedGraph, DualGraph, add_apexes, build_dual
from .errors import (EmptyColorClass, InvalidInstanceError, InvariantViolation,
                     NoSeparationNeeded, TooLarge)
from .fence import Fence, extract_fence
from .geom import Instance, validate_instance
from .visibility import free_segments

DEFAULT_ORACLE_BUDGET = 2**25
REL_TOL = 1e-9


def oracle_budget() -> int:
    """Labeling budget, overridable through ``GEOMCUT_ORACLE_BUDGET``."""
    raw = os.environ.get("GEOMCUT_ORACLE_BUDGET")
    return int(raw) if raw else DEFAULT_ORACLE_BUDGET


@dataclass(frozen=True)
class Cut:
    edges: frozenset[int]                      # dual edge ids
    value: float
    labeling: Optional[dict[int, int]] = None  # node -> color (flow cuts: 0 source side, 1 sink side)
    arrangement_edges: frozenset[int] = field(default=frozenset())


def _make_cut(g: DualGraph, edge_ids: Iterable[int], labeling=None) -> Cut:
    ids = frozenset(edge_ids)
    value = sum(g.edges[i].weight for i in sorted(ids))
    prov = frozenset(a for i in ids for a in g.edges[i].provenance)
    return Cut(ids, value, labeling, prov)


def _cut_from_labels(g: DualGraph, labels: dict[int, int]) -> Cut:
    return _make_cut(g, (i for i, e in enumerate(g.edges)
                         if not e.is_loop and labels[e.u] != labels[e.v]), labels)


def separates(g: DualGraph, cut: Cut) -> bool:
    """True iff no component of ``g`` minus the cut holds terminals of two colors."""
    parent = list(range(g.num_nodes))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, e in enumerate(g.edges):
        if i not in cut.edges:
            parent[find(e.u)] = find(e.v)
    seen: dict[int, int] = {}
    for color, nodes in g.terminals.items():
        for v in nodes:
            root = find(v)
            if seen.setdefault(root, color) != color:
                return False
    return True


# ---------------------------------------------------------------------------
# Max-flow / min-cut
# ---------------------------------------------------------------------------

def max_flow_min_cut(g: DualGraph, sources: Iterable[int], sinks: Iterable[int]) -> Cut:
    """Shortest-augmenting-path max flow in Dinic phases; returns the source-side residual cut.

    Undirected edges carry their weight as capacity in both directions.
    Several sources (sinks) behave like one super source (sink) joined by
    unbounded arcs.
    """
    src, snk = set(sources), set(sinks)
    if src & snk:
        raise NoSeparationNeeded(f"nodes {sorted(src & snk)} are both source and sink")
    if not src or not snk:
        raise ValueError("sources and sinks must both be nonempty")

    n = g.num_nodes
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]  # (neighbor, edge, +1/-1)
    for i, e in enumerate(g.edges):
        if e.is_loop or e.weight <= 0:
            continue
        adj[e.u].append((e.v, i, 1))
        adj[e.v].append((e.u, i, -1))
    cap = [e.weight for e in g.edges]
    flow = [0.0] * len(g.edges)  # signed, positive means u -> v
    eps = 1e-12 * max(1.0, g.total_weight())
    start = sorted(src)

    def bfs_levels():
        level = [-1] * n
        for v in start:
            level[v] = 0
        queue = deque(start)
        reached = False
        while queue:
            x = queue.popleft()
            for y, i, sign in adj[x]:
                if level[y] < 0 and cap[i] - sign * flow[i] > eps:
                    level[y] = level[x] + 1
                    reached = reached or y in snk
                    queue.append(y)
        return level, reached

    total = 0.0
    while True:
        level, reached = bfs_levels()
        if not reached:
            break
        it = [0] * n
        for s0 in start:
            while True:
                nodes, path = [s0], []
                while nodes[-1] not in snk:
                    x = nodes[-1]
                    arcs = adj[x]
                    while it[x] < len(arcs):
                        y, i, sign = arcs[it[x]]
                        if level[y] == level[x] + 1 and cap[i] - sign * flow[i] > eps:
                            break
                        it[x] += 1
                    if it[x] < len(arcs):
                        path.append((i, sign))
                        nodes.append(y)
                        continue
                    level[x] = -1           # dead end for the rest of the phase
                    if not path:
                        break
                    path.pop()
                    nodes.pop()
                    it[nodes[-1]] += 1
                if not path:
                    break
                push = min(cap[i] - sign * flow[i] for i, sign in path)
                for i, sign in path:
                    flow[i] += sign * push
                total += push

    side = {v for v in range(n) if level[v] >= 0}
    cut_ids = [i for i, e in enumerate(g.edges)
               if not e.is_loop and ((e.u in side) != (e.v in side))]
    cut = _make_cut(g, cut_ids, {v: 0 if v in side else 1 for v in range(n)})
    if abs(cut.value - total) > REL_TOL * max(1.0, cut.value):
        raise InvariantViolation(f"cut value {cut.value} != flow value {total}")
    return cut


# ---------------------------------------------------------------------------
# Exact labelings
# ---------------------------------------------------------------------------

def brute_force_labeling(g: DualGraph, k: int, budget: int | None = None) -> Cut:
    """Exhaustive minimum over all colorings of the non-terminal nodes.

    Refuses (:class:`TooLarge`) when ``k ** f`` exceeds the budget, ``f``
    being the number of non-terminal nodes.  The search is depth-first with
    branch-and-bound pruning, which never discards an optimal labeling.
    """
    budget = oracle_budget() if budget is None else budget
    fixed = g.terminal_color()
    if any(not 0 <= c < k for c in fixed.values()):
        raise ValueError("terminal color outside [0, k)")
    free = [v for v in range(g.num_nodes) if v not in fixed]
    f = len(free)
    if k == 1:
        return _cut_from_labels(g, {v: 0 for v in range(g.num_nodes)})
    if k ** f > budget:
        raise TooLarge(f"{k}^{f} labelings exceed the budget of {budget} (f={f}, k={k})")

    nbrs: list[dict[int, float]] = [dict() for _ in range(g.num_nodes)]
    for e in g.edges:
        if not e.is_loop:
            nbrs[e.u][e.v] = nbrs[e.u].get(e.v, 0.0) + e.weight
            nbrs[e.v][e.u] = nbrs[e.v].get(e.u, 0.0) + e.weight

    # order free nodes outward from the terminals so costs show up early
    order: list[int] = []
    placed = set(fixed)
    queue = deque(sorted(fixed))
    while queue:
        x = queue.popleft()
        for y in sorted(nbrs[x]):
            if y not in placed:
                placed.add(y)
                order.append(y)
                queue.append(y)
    order += [v for v in free if v not in placed]
    pos = {v: i for i, v in enumerate(order)}

    base = sum(w for v, c in fixed.items() for u, w in nbrs[v].items()
               if u in fixed and u > v and fixed[u] != c)
    const = [[sum(w for u, w in nbrs[v].items() if u in fixed and fixed[u] != c) for c in range(k)]
             for v in order]
    earlier = [[(pos[u], w) for u, w in nbrs[v].items() if u not in fixed and pos[u] < pos[v]]
               for v in order]
    floor = [min(row) for row in const]
    suffix = [0.0] * (f + 1)
    for i in range(f - 1, -1, -1):
        suffix[i] = suffix[i + 1] + floor[i]

    labels = [0] * f
    best = [float("inf"), None]

    def search(i, cost):
        if cost + suffix[i] >= best[0]:
            return
        if i == f:
            best[0], best[1] = cost, labels[:]
            return
        steps = []
        for c in range(k):
            step = const[i][c]
            for j, w in earlier[i]:
                if labels[j] != c:
                    step += w
            steps.append((step, c))
        steps.sort()
        for step, c in steps:
            labels[i] = c
            search(i + 1, cost + step)

    search(0, base)
    result = dict(fixed)
    result.update({v: best[1][pos[v]] for v in order})
    return _cut_from_labels(g, result)


def _labeling_model(g: DualGraph, k: int):
    """One-hot labeling model with per-color edge indicators.

    Variables are ``x[v, c]`` for free nodes followed by ``y[e, c]`` for
    edges; ``y[e, c] >= |x[u, c] - x[v, c]|`` and the objective is half the
    weighted sum of ``y``.  Its relaxation is the Calinescu-Karloff-Rabani LP.
    Returns ``(cost, A, lower, upper, free, nx)``.
    """
    from scipy.sparse import coo_matrix

    fixed = g.terminal_color()
    free = [v for v in range(g.num_nodes) if v not in fixed]
    xid = {v: i for i, v in enumerate(free)}
    nx = len(free) * k
    edges = [e for e in g.edges if not e.is_loop]
    ny = len(edges) * k
    cost = np.concatenate([np.zeros(nx), np.repeat([e.weight / 2 for e in edges], k)])

    rows, cols, vals, lo = [], [], [], []
    r = 0

    def term(v, c):
        """(variable index or None, constant) for the indicator x[v, c]."""
        if v in fixed:
            return None, 1.0 if fixed[v] == c else 0.0
        return xid[v] * k + c, 0.0

    for ei, e in enumerate(edges):
        for c in range(k):
            y = nx + ei * k + c
            (iu, cu), (iv, cv) = term(e.u, c), term(e.v, c)
            for sgn in (1.0, -1.0):
                # y - sgn * (x_u - x_v) >= 0
                rows.append(r), cols.append(y), vals.append(1.0)
                const = 0.0
                if iu is None:
                    const -= sgn * cu
                else:
                    rows.append(r), cols.append(iu), vals.append(-sgn)
                if iv is None:
                    const += sgn * cv
                else:
                    rows.append(r), cols.append(iv), vals.append(sgn)
                lo.append(-const)
                r += 1
    for v in free:
        for c in range(k):
            rows.append(r), cols.append(xid[v] * k + c), vals.append(1.0)
        lo.append(1.0)
        r += 1
    n_ineq = len(lo) - len(free)
    A = coo_matrix((vals, (rows, cols)), shape=(r, nx + ny)).tocsr()
    upper = np.concatenate([np.full(n_ineq, np.inf), np.ones(len(free))])
    return cost, A, np.array(lo), upper, free, nx


def exact_labeling(g: DualGraph, k: int, time_limit: float | None = None) -> Cut:
    """Exact minimum multiway labeling by integer programming (HiGHS).

    Used as the oracle where exhaustive enumeration is out of reach.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    fixed = g.terminal_color()
    if k == 1 or len(fixed) == g.num_nodes:
        return _cut_from_labels(g, {v: fixed.get(v, 0) for v in range(g.num_nodes)})
    cost, A, lo, upper, free, nx = _labeling_model(g, k)
    options = {"mip_rel_gap": 0.0}
    if time_limit is not None:
        options["time_limit"] = time_limit
    res = milp(cost, constraints=LinearConstraint(A, lo, upper),
               integrality=np.concatenate([np.ones(nx), np.zeros(len(cost) - nx)]),
               bounds=Bounds(0.0, 1.0), options=options)
    if res.status != 0:
        raise TooLarge(f"integer program not solved to optimality: {res.message}")
    x = res.x[:nx].reshape(len(free), k)
    labels = dict(fixed)
    labels.update({v: int(np.argmax(x[i])) for i, v in enumerate(free)})
    return _cut_from_labels(g, labels)


def lp_lower_bound(g: DualGraph, k: int) -> float:
    """Optimal value of the LP relaxation, a lower bound on every multiway cut.

    Solved with the HiGHS interior-point method, which copes with dual
    graphs far beyond the reach of the integer program.
    """
    from scipy.optimize import linprog

    fixed = g.terminal_color()
    if k == 1 or len(fixed) == g.num_nodes:
        return exact_labeling(g, k).value
    cost, A, lo, upper, _, _ = _labeling_model(g, k)
    eq = np.isfinite(upper)
    res = linprog(cost, A_ub=-A[~eq], b_ub=-lo[~eq], A_eq=A[eq], b_eq=lo[eq],
                  bounds=(0.0, 1.0), method="highs-ipm")
    if res.status != 0:
        raise TooLarge(f"LP relaxation not solved: {res.message}")
    return float(res.fun)


# ---------------------------------------------------------------------------
# Multiway heuristic
# ---------------------------------------------------------------------------

def isolation_heuristic(ag: AugmentedGraph) -> Cut:
    """Union of the k-1 cheapest apex-isolating cuts; within 2 - 2/k of optimal."""
    k = ag.num_colors
    m = len(ag.base.edges)
    if k < 2:
        return _make_cut(ag.base, ())
    for c in range(k):
        if not ag.base.terminals.get(c):
            raise EmptyColorClass(f"color {c} has no terminal faces")
    full = ag.as_graph()
    isolating = []
    for c in range(k):
        others = [ag.apex[j] for j in range(k) if j != c]
        cut = max_flow_min_cut(full, [ag.apex[c]], others)
        if any(i >= m for i in cut.edges):
            raise InvariantViolation("apex edge in an isolating cut")
        isolating.append((cut.value, c, cut))
    isolating.sort(key=lambda t: (t[0], t[1]))
    union = set()
    for _, _, cut in isolating[:k - 1]:
        union |= cut.edges
    return _make_cut(ag.base, union)


# ---------------------------------------------------------------------------
# End-to-end
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Prepared:
    arrangement: Arrangement
    dual: DualGraph


def prepare(inst: Instance) -> Prepared:
    """Validate, then build free segments, arrangement and dual graph."""
    report = validate_instance(inst)
    if not report.valid:
        raise InvalidInstanceError(report)
    arr = locate_object_faces(build_arrangement(free_segments(inst)), inst)
    return Prepared(arr, build_dual(arr, inst))


def _empty_fence() -> Fence:
    return Fence((), 0.0, None)


def solve_two_color(inst: Instance) -> Fence:
    if inst.num_colors != 2:
        raise ValueError(f"two-color solver needs k=2, got k={inst.num_colors}")
    if len(inst.colors_used()) < 2:
        report = validate_instance(inst)
        if not report.valid:
            raise InvalidInstanceError(report)
        return _empty_fence()
    prep = prepare(inst)
    g = prep.dual
    cut = max_flow_min_cut(g, g.terminals[0], g.terminals[1])
    return extract_fence(prep.arrangement, cut)


METHODS = ("auto", "exact2", "isolation", "bruteforce", "ilp")


def solve(inst: Instance, method: str = "auto", budget: int | None = None) -> Fence:
    """Compute a fence with the chosen method.

    ``auto`` runs the exact flow solver for two colors and the isolation
    heuristic otherwise.  ``bruteforce`` and ``ilp`` are exact for any k.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "exact2" if inst.num_colors == 2 else "isolation"
    if method == "exact2":
        return solve_two_color(inst)
    used = sorted(inst.colors_used())
    if len(used) < 2:
        report = validate_instance(inst)
        if not report.valid:
            raise InvalidInstanceError(report)
        return _empty_fence()
    prep = prepare(inst)
    g = prep.dual
    if method == "isolation":
        compact = DualGraph(g.num_nodes, g.edges, {i: g.terminals[c] for i, c in enumerate(used)})
        cut = isolation_heuristic(add_apexes(compact, len(used)))
    elif method == "bruteforce":
        cut = brute_force_labeling(g, inst.num_colors, budget)
    else:
        cut = exact_labeling(g, inst.num_colors)
    return extract_fence(prep.arrangement, cut)
